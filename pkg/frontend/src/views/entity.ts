/** Entity view: registry browser plus per-entity profile and timeline. */

import { h, VNode } from "../vnode.js";
import type { Entity, EntityPage, Timeline } from "../types.js";
import type { ViewState } from "../urlState.js";
import type { Actions } from "./shell.js";

export function renderEntityList(page: EntityPage, ui: Actions): VNode {
  return h("table", { class: "entity-list" },
    h("thead", h("tr", h("th", "entity"), h("th", "type"), h("th", "mentions"),
      h("th", "documents"))),
    h("tbody", page.entities.map((entity) => h("tr",
      h("td", h("a", { href: "#", class: "entity-link",
        onclick: (event: Event) => {
          event.preventDefault();
          ui.go({ view: "entity", selectedEntity: entity.canonical_id });
        } }, entity.display_name)),
      h("td", entity.entity_type),
      h("td", { class: "num" }, String(entity.mention_count)),
      h("td", { class: "num" }, String(entity.documents.length))))));
}

export function renderEntityProfile(entity: Entity, timeline: Timeline,
    ui: Actions): VNode {
  return h("div", { class: "entity-profile" },
    h("h2", `${entity.display_name} (${entity.entity_type})`),
    h("p", { class: "entity-stats" },
      `${String(entity.mention_count)} mentions across `
      + `${String(entity.documents.length)} documents`),
    h("p", h("button", { class: "search-mentions",
      onclick: () => ui.go({ view: "search", entity: entity.canonical_id,
        q: "", label: "", chapter: null, page: 1 }) },
      "Search all mentioning paragraphs")),
    h("h3", "Timeline"),
    h("table", { class: "timeline" },
      h("thead", h("tr", h("th", "document"), h("th", "ordinal"),
        h("th", "paragraph"), h("th", "surface"))),
      h("tbody", timeline.hops.map((hop) => h("tr",
        h("td", hop.doc_id),
        h("td", { class: "num" }, String(hop.ordinal)),
        h("td", h("a", { href: "#", class: "hop-link",
          onclick: (event: Event) => {
            event.preventDefault();
            ui.go({ view: "paragraph", paraId: hop.para_id });
          } }, hop.para_id)),
        h("td", hop.surface))))));
}

export function renderEntities(_state: ViewState, list: EntityPage | null,
    profile: { entity: Entity; timeline: Timeline } | null, ui: Actions): VNode {
  const children: VNode[] = [];
  if (profile !== null) {
    children.push(renderEntityProfile(profile.entity, profile.timeline, ui));
  } else if (list !== null) {
    children.push(renderEntityList(list, ui));
  }
  return h("section", { class: "view entities" }, children);
}
