import { describe, expect, it } from "vitest";

import { splitMentions, splitSnippet } from "../src/markup.js";

describe("snippet markers", () => {
  it("extracts marked tokens", () => {
    expect(splitSnippet("Br Smith was [[transferred]] to [[Artane]].")).toEqual([
      { text: "Br Smith was ", marked: false },
      { text: "transferred", marked: true },
      { text: " to ", marked: false },
      { text: "Artane", marked: true },
      { text: ".", marked: false },
    ]);
  });

  it("no markers means one plain segment", () => {
    expect(splitSnippet("plain text")).toEqual([{ text: "plain text", marked: false }]);
  });

  it("reconstructs the original text without the marker syntax", () => {
    const snippet = "a [[b]] c [[d]] e";
    const joined = splitSnippet(snippet).map((s) => s.text).join("");
    expect(joined).toBe("a b c d e");
  });
});

describe("mention spans", () => {
  const text = "Br Smith visited Artane today";
  const mentions = [
    { start: 0, end: 8, surface: "Br Smith", entity_type: "PERSON",
      canonical_id: "br_smith" },
    { start: 17, end: 23, surface: "Artane", entity_type: "INSTITUTION",
      canonical_id: "artane" },
  ];

  it("slices text exactly at mention offsets", () => {
    const segments = splitMentions(text, mentions);
    expect(segments.map((s) => s.text).join("")).toBe(text);
    const marked = segments.filter((s) => s.mention !== null);
    expect(marked.map((s) => s.text)).toEqual(["Br Smith", "Artane"]);
    expect(marked.map((s) => s.mention!.canonical_id)).toEqual(["br_smith", "artane"]);
  });

  it("handles unsorted mention lists", () => {
    const segments = splitMentions(text, [...mentions].reverse());
    expect(segments.map((s) => s.text).join("")).toBe(text);
  });

  it("handles no mentions", () => {
    expect(splitMentions("abc", [])).toEqual([{ text: "abc", mention: null }]);
  });
});
