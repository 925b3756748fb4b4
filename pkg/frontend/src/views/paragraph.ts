/** Full-paragraph view with annotations and highlighted entity mentions. */

import { h, VNode } from "../vnode.js";
import { splitMentions } from "../markup.js";
import type { ParagraphDetail } from "../types.js";
import type { Actions } from "./shell.js";

export function renderParagraph(detail: ParagraphDetail, ui: Actions): VNode {
  const header = detail.ryan_number
    ? `${detail.para_id} / ${detail.doc_title} (${detail.ryan_number})`
    : `${detail.para_id} / ${detail.doc_title}`;
  return h("section", { class: "view paragraph" },
    h("h2", header),
    h("p", { class: "text" },
      splitMentions(detail.text, detail.mentions).map((seg) =>
        seg.mention === null ? seg.text as (VNode | string)
          : h("mark", {
            class: `mention ${seg.mention.entity_type.toLowerCase()}`,
            title: seg.mention.canonical_id,
            onclick: () => ui.go({ view: "entity",
              selectedEntity: seg.mention!.canonical_id }),
          }, seg.text))),
    h("h3", "Annotations"),
    detail.annotations.length === 0
      ? h("p", { class: "empty" }, "none")
      : h("table", { class: "annotations" },
        h("thead", h("tr", h("th", "label"), h("th", "source"),
          h("th", "confidence"))),
        h("tbody", detail.annotations.map((a) => h("tr",
          h("td", a.label), h("td", a.source),
          h("td", { class: "num" }, String(a.confidence)))))),
    h("p",
      h("a", { href: "#", class: "back-to-search",
        onclick: (event: Event) => {
          event.preventDefault();
          ui.go({ view: "search" });
        } }, "Back to search")));
}
