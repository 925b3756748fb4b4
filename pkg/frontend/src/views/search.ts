/** Search view: query box, facet filters, paginated marked-snippet results. */

import { h, VNode } from "../vnode.js";
import { splitSnippet } from "../markup.js";
import type { SearchPage } from "../types.js";
import type { ViewState } from "../urlState.js";
import type { Actions } from "./shell.js";

function readValue(event: Event): string {
  return (event.target as HTMLInputElement).value;
}

export function renderSearch(state: ViewState, page: SearchPage | null,
    ui: Actions): VNode {
  const draft = { q: state.q, label: state.label, entity: state.entity,
    chapter: state.chapter };
  const submit = () => ui.go({ view: "search", ...draft, page: 1 });

  const form = h("form", {
    class: "search-form",
    onsubmit: (event: Event) => { event.preventDefault(); submit(); },
  },
    h("input", { class: "q", name: "q", placeholder: "tokens (AND)",
      value: state.q, oninput: (e: Event) => { draft.q = readValue(e); } }),
    h("input", { class: "facet-label", name: "label", placeholder: "label",
      value: state.label, oninput: (e: Event) => { draft.label = readValue(e); } }),
    h("input", { class: "facet-entity", name: "entity", placeholder: "entity id",
      value: state.entity, oninput: (e: Event) => { draft.entity = readValue(e); } }),
    h("input", { class: "facet-chapter", name: "chapter", placeholder: "chapter",
      value: state.chapter === null ? "" : String(state.chapter),
      oninput: (e: Event) => {
        const raw = readValue(e).trim();
        draft.chapter = raw === "" ? null : Number.parseInt(raw, 10);
      } }),
    h("button", { type: "submit" }, "Search"));

  if (page === null) {
    return h("section", { class: "view search" }, form);
  }

  const lastPage = Math.max(1, Math.ceil(page.total / page.page_size));
  const pager = h("div", { class: "pager" },
    h("button", {
      disabled: page.page <= 1,
      onclick: () => ui.go({ page: state.page - 1 }),
    }, "Prev"),
    h("span", { class: "pager-status" },
      `page ${String(page.page)} of ${String(lastPage)} (${String(page.total)} hits)`),
    h("button", {
      disabled: page.page >= lastPage,
      onclick: () => ui.go({ page: state.page + 1 }),
    }, "Next"));

  return h("section", { class: "view search" },
    form,
    h("ul", { class: "hits" }, page.hits.map((hit) => h("li", { class: "hit" },
      h("a", {
        class: "hit-id", href: "#",
        onclick: (event: Event) => {
          event.preventDefault();
          ui.go({ view: "paragraph", paraId: hit.para_id });
        },
      }, hit.ryan_number ? `${hit.para_id} (${hit.ryan_number})` : hit.para_id),
      h("p", { class: "snippet" }, splitSnippet(hit.snippet).map((seg) =>
        seg.marked ? h("mark", seg.text) : seg.text) as (VNode | string)[]),
      h("span", { class: "chips" },
        hit.labels.map((label) => h("button", {
          class: "chip label",
          onclick: () => ui.go({ view: "search", label, page: 1 }),
        }, label)),
        hit.entities.map((entity) => h("button", {
          class: "chip entity",
          onclick: () => ui.go({ view: "entity", selectedEntity: entity }),
        }, entity)))))),
    pager);
}
