import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, buildQuery } from "../src/api.js";

function fakeFetch(routes: Record<string, unknown>, log: string[] = []) {
  return (async (input: RequestInfo | URL) => {
    const url = String(input);
    log.push(url);
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    if (path in routes) {
      return new Response(JSON.stringify(routes[path]), { status: 200 });
    }
    return new Response(JSON.stringify({ error: "artifact_missing",
      detail: "not computed" }), { status: 404 });
  }) as typeof fetch;
}

describe("query building", () => {
  it("drops empty and null values", () => {
    expect(buildQuery({ q: "abuse", label: "", chapter: null, page: 2 }))
      .toBe("?q=abuse&page=2");
  });

  it("empty params give an empty string", () => {
    expect(buildQuery({})).toBe("");
  });
});

describe("api client", () => {
  it("requests the documented endpoints", async () => {
    const log: string[] = [];
    const payload = { total: 0, page: 1, page_size: 20, hits: [] };
    const client = new ApiClient("http://api.test",
      fakeFetch({ "/api/paragraphs?q=abuse&chapter=5&page=2": payload }, log));
    await client.searchParagraphs({ q: "abuse", chapter: 5, page: 2 });
    expect(log).toEqual(["http://api.test/api/paragraphs?q=abuse&chapter=5&page=2"]);
  });

  it("returns the payload unchanged (no client-side analytics)", async () => {
    const payload = {
      total: 3, page: 1, page_size: 20,
      hits: [{ para_id: "p", doc_id: "d", ryan_number: null,
        snippet: "a [[b]] c", labels: ["x"], entities: ["e"] }],
    };
    const client = new ApiClient("http://api.test",
      fakeFetch({ "/api/paragraphs?q=b": payload }));
    const got = await client.searchParagraphs({ q: "b" });
    expect(got).toEqual(payload);
  });

  it("encodes path parameters", async () => {
    const log: string[] = [];
    const client = new ApiClient("http://api.test",
      fakeFetch({ "/api/paragraphs/ch%3A0001": { para_id: "ch:0001" } }, log));
    await client.paragraph("ch:0001");
    expect(log[0]).toBe("http://api.test/api/paragraphs/ch%3A0001");
  });

  it("maps 404 artifact_missing to notComputed", async () => {
    const client = new ApiClient("http://api.test", fakeFetch({}));
    const err = await client.flows().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
    expect(err.notComputed).toBe(true);
  });

  it("maps network failure to unreachable", async () => {
    const broken = (async () => { throw new TypeError("ECONNREFUSED"); }) as
      unknown as typeof fetch;
    const client = new ApiClient("http://api.test", broken);
    const err = await client.stats().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.unreachable).toBe(true);
    expect(err.detail).toContain("ECONNREFUSED");
  });

  it("carries the server's error body through", async () => {
    const failing = (async () => new Response(
      JSON.stringify({ error: "empty_query", detail: "need a filter" }),
      { status: 400 })) as unknown as typeof fetch;
    const client = new ApiClient("http://api.test", failing);
    const err = await client.searchParagraphs({}).catch((e) => e);
    expect(err.status).toBe(400);
    expect(err.error).toBe("empty_query");
    expect(err.detail).toBe("need a filter");
  });
});
