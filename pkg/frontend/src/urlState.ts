/** View state serialized to and from the URL query string.
 *
 * Every view is addressable by URL alone, and the browser back button
 * restores the previous state exactly (the app listens for popstate and
 * re-renders from the parsed state).
 */

export type ViewName = "search" | "paragraph" | "entity" | "networks" | "transfers";

export interface ViewState {
  view: ViewName;
  // search facets
  q: string;
  label: string;
  entity: string;
  chapter: number | null;
  page: number;
  // paragraph view
  paraId: string;
  // entity view
  selectedEntity: string;
  // networks view
  graph: "collocation" | "communication";
  minWeight: number;
  selectedEdge: string;   // "a|b" of the edge whose evidence is open
  // transfers view
  minSupport: number;
  minConfidence: number;
  sortKey: "support" | "confidence" | "lift";
  sortDir: "asc" | "desc";
}

export const DEFAULT_STATE: ViewState = {
  view: "search",
  q: "",
  label: "",
  entity: "",
  chapter: null,
  page: 1,
  paraId: "",
  selectedEntity: "",
  graph: "collocation",
  minWeight: 1,
  selectedEdge: "",
  minSupport: 0.05,
  minConfidence: 0.6,
  sortKey: "confidence",
  sortDir: "desc",
};

/** Only non-default fields are written, keeping URLs short and canonical. */
export function stateToQuery(state: ViewState): string {
  const params = new URLSearchParams();
  const put = (key: string, value: string | number | null, dflt: unknown) => {
    if (value !== dflt && value !== null && value !== "") {
      params.set(key, String(value));
    }
  };
  put("view", state.view, DEFAULT_STATE.view);
  put("q", state.q, "");
  put("label", state.label, "");
  put("entity", state.entity, "");
  put("chapter", state.chapter, null);
  put("page", state.page, 1);
  put("para", state.paraId, "");
  put("id", state.selectedEntity, "");
  put("graph", state.graph, DEFAULT_STATE.graph);
  put("min_weight", state.minWeight, DEFAULT_STATE.minWeight);
  put("edge", state.selectedEdge, "");
  put("min_support", state.minSupport, DEFAULT_STATE.minSupport);
  put("min_confidence", state.minConfidence, DEFAULT_STATE.minConfidence);
  put("sort", state.sortKey, DEFAULT_STATE.sortKey);
  put("dir", state.sortDir, DEFAULT_STATE.sortDir);
  const text = params.toString();
  return text ? `?${text}` : "";
}

export function stateFromQuery(query: string): ViewState {
  const params = new URLSearchParams(query.startsWith("?") ? query.slice(1) : query);
  const state: ViewState = { ...DEFAULT_STATE };
  const views: ViewName[] = ["search", "paragraph", "entity", "networks", "transfers"];
  const view = params.get("view");
  if (view && (views as string[]).includes(view)) {
    state.view = view as ViewName;
  }
  state.q = params.get("q") ?? "";
  state.label = params.get("label") ?? "";
  state.entity = params.get("entity") ?? "";
  state.chapter = intOrNull(params.get("chapter"));
  state.page = intOrNull(params.get("page")) ?? 1;
  state.paraId = params.get("para") ?? "";
  state.selectedEntity = params.get("id") ?? "";
  state.graph = params.get("graph") === "communication" ? "communication"
    : "collocation";
  state.minWeight = intOrNull(params.get("min_weight")) ?? DEFAULT_STATE.minWeight;
  state.selectedEdge = params.get("edge") ?? "";
  state.minSupport = floatOr(params.get("min_support"), DEFAULT_STATE.minSupport);
  state.minConfidence = floatOr(params.get("min_confidence"),
    DEFAULT_STATE.minConfidence);
  const sort = params.get("sort");
  if (sort === "support" || sort === "confidence" || sort === "lift") {
    state.sortKey = sort;
  }
  if (params.get("dir") === "asc") {
    state.sortDir = "asc";
  }
  return state;
}

function intOrNull(raw: string | null): number | null {
  if (raw === null) return null;
  const value = Number.parseInt(raw, 10);
  return Number.isFinite(value) ? value : null;
}

function floatOr(raw: string | null, dflt: number): number {
  if (raw === null) return dflt;
  const value = Number.parseFloat(raw);
  return Number.isFinite(value) ? value : dflt;
}
