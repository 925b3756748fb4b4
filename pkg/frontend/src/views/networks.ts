/** Network view: force-directed graph, min-weight slider, evidence panel. */

import { h, VNode } from "../vnode.js";
import type { GraphData } from "../types.js";
import type { Point } from "../forceLayout.js";
import type { ViewState } from "../urlState.js";
import type { Actions } from "./shell.js";

export const GRAPH_WIDTH = 760;
export const GRAPH_HEIGHT = 520;

export function edgeKey(a: string, b: string): string {
  return `${a}|${b}`;
}

export function renderNetworks(state: ViewState, graph: GraphData | null,
    layout: Map<string, Point>, ui: Actions): VNode {
  const controls = h("div", { class: "net-controls" },
    h("button", {
      class: state.graph === "collocation" ? "toggle active" : "toggle",
      onclick: () => ui.go({ graph: "collocation", selectedEdge: "" }),
    }, "Collocation"),
    h("button", {
      class: state.graph === "communication" ? "toggle active" : "toggle",
      onclick: () => ui.go({ graph: "communication", selectedEdge: "" }),
    }, "Communication"),
    h("label", { class: "weight-label" },
      `min weight: ${String(state.minWeight)}`,
      h("input", {
        type: "range", min: 1, max: 10, step: 1, value: state.minWeight,
        class: "min-weight",
        onchange: (event: Event) => ui.go({
          minWeight: Number.parseInt((event.target as HTMLInputElement).value, 10),
          selectedEdge: "",
        }),
      })));

  if (graph === null) {
    return h("section", { class: "view networks" }, controls);
  }

  const edges = graph.edges.map((edge) => {
    const a = layout.get(edge.a);
    const b = layout.get(edge.b);
    if (!a || !b) return null;
    const selected = state.selectedEdge === edgeKey(edge.a, edge.b);
    return h("line", {
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
      class: selected ? "edge selected" : "edge",
      "stroke-width": Math.min(1 + edge.weight, 6),
      "data-edge": edgeKey(edge.a, edge.b),
      "data-weight": edge.weight,
      onclick: () => ui.go({ selectedEdge: edgeKey(edge.a, edge.b) }),
    }, h("title", `${edge.a} to ${edge.b}: weight ${String(edge.weight)}`));
  }).filter((e): e is VNode => e !== null);

  const nodes = graph.nodes.flatMap((node) => {
    const at = layout.get(node.id);
    if (!at) return [];
    return [
      h("circle", {
        cx: at.x, cy: at.y, r: Math.min(5 + node.weighted_degree, 18),
        class: `node ${node.type.toLowerCase()}`,
        "data-node": node.id,
        "data-weighted-degree": node.weighted_degree,
        onclick: () => ui.go({ view: "entity", selectedEntity: node.id }),
      }, h("title", `${node.id}: degree ${String(node.degree)}, `
        + `weighted ${String(node.weighted_degree)}`)),
      h("text", { x: at.x + 8, y: at.y - 6, class: "node-label" }, node.id),
    ];
  });

  const selected = graph.edges.find((e) => edgeKey(e.a, e.b) === state.selectedEdge);
  const evidence = selected === undefined ? null
    : h("aside", { class: "evidence" },
      h("h3", `${selected.a} and ${selected.b}: `
        + `${String(selected.weight)} shared paragraphs`),
      h("ul", selected.evidence.map((paraId) => h("li",
        h("a", { href: "#", class: "evidence-link",
          onclick: (event: Event) => {
            event.preventDefault();
            ui.go({ view: "paragraph", paraId });
          } }, paraId)))));

  return h("section", { class: "view networks" },
    controls,
    h("div", { class: "net-meta" },
      `${String(graph.nodes.length)} nodes, ${String(graph.edges.length)} edges`),
    h("svg", { viewBox: `0 0 ${GRAPH_WIDTH} ${GRAPH_HEIGHT}`, class: "graph" },
      edges, nodes),
    evidence ?? h("aside", { class: "evidence empty" },
      "Click an edge to list its evidence paragraphs."));
}
