/** Text helpers: match markers in snippets, mention spans in paragraphs. */

import type { Mention } from "./types.js";

export interface Segment {
  text: string;
  marked: boolean;
}

const MARKER = /\[\[(.+?)\]\]/g;

/** Split "a [[b]] c" into plain and marked segments. */
export function splitSnippet(snippet: string): Segment[] {
  const out: Segment[] = [];
  let cursor = 0;
  for (const match of snippet.matchAll(MARKER)) {
    const at = match.index ?? 0;
    if (at > cursor) {
      out.push({ text: snippet.slice(cursor, at), marked: false });
    }
    out.push({ text: match[1], marked: true });
    cursor = at + match[0].length;
  }
  if (cursor < snippet.length) {
    out.push({ text: snippet.slice(cursor), marked: false });
  }
  return out;
}

export interface MentionSegment {
  text: string;
  mention: Mention | null;
}

/** Slice paragraph text into plain runs and entity-mention runs. */
export function splitMentions(text: string, mentions: Mention[]): MentionSegment[] {
  const sorted = [...mentions].sort((a, b) => a.start - b.start);
  const out: MentionSegment[] = [];
  let cursor = 0;
  for (const mention of sorted) {
    if (mention.start > cursor) {
      out.push({ text: text.slice(cursor, mention.start), mention: null });
    }
    out.push({ text: text.slice(mention.start, mention.end), mention });
    cursor = mention.end;
  }
  if (cursor < text.length) {
    out.push({ text: text.slice(cursor), mention: null });
  }
  return out;
}
