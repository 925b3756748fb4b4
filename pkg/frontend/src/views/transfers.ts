/** Transfers view: sortable rule table with thresholds, flow summary. */

import { h, VNode } from "../vnode.js";
import type { Flow, TransferRule } from "../types.js";
import type { ViewState } from "../urlState.js";
import type { Actions } from "./shell.js";

export function sortRules(rules: TransferRule[], key: ViewState["sortKey"],
    dir: ViewState["sortDir"]): TransferRule[] {
  const sign = dir === "asc" ? 1 : -1;
  return [...rules].sort((a, b) => {
    if (a[key] !== b[key]) return sign * (a[key] - b[key]);
    return ruleLabel(a) < ruleLabel(b) ? -1 : 1;
  });
}

export function ruleLabel(rule: TransferRule): string {
  return `${rule.antecedent.join(",")} => ${rule.consequent.join(",")}`;
}

/** First institution named by the rule's items, for the search link. */
export function ruleEntity(rule: TransferRule): string | null {
  for (const item of [...rule.antecedent, ...rule.consequent]) {
    if (item.startsWith("from=") || item.startsWith("to=")) {
      return item.split("=", 2)[1];
    }
  }
  return null;
}

export function renderTransfers(state: ViewState, rules: TransferRule[] | null,
    flows: Flow[] | null, ui: Actions): VNode {
  const thresholds = { minSupport: state.minSupport,
    minConfidence: state.minConfidence };
  const controls = h("form", {
    class: "rule-thresholds",
    onsubmit: (event: Event) => {
      event.preventDefault();
      ui.go({ ...thresholds });
    },
  },
    h("label", "min support ",
      h("input", { class: "min-support", value: String(state.minSupport),
        oninput: (e: Event) => {
          thresholds.minSupport =
            Number.parseFloat((e.target as HTMLInputElement).value) || 0;
        } })),
    h("label", "min confidence ",
      h("input", { class: "min-confidence", value: String(state.minConfidence),
        oninput: (e: Event) => {
          thresholds.minConfidence =
            Number.parseFloat((e.target as HTMLInputElement).value) || 0;
        } })),
    h("button", { type: "submit" }, "Apply"));

  if (rules === null) {
    return h("section", { class: "view transfers" }, controls);
  }

  const header = (key: ViewState["sortKey"]) => h("th", {
    class: state.sortKey === key ? `sortable sorted-${state.sortDir}` : "sortable",
    "data-sort": key,
    onclick: () => ui.go({
      sortKey: key,
      sortDir: state.sortKey === key && state.sortDir === "desc" ? "asc" : "desc",
    }),
  }, key);

  const sorted = sortRules(rules, state.sortKey, state.sortDir);
  const table = h("table", { class: "rules" },
    h("thead", h("tr", h("th", "rule"), header("support"), header("confidence"),
      header("lift"), h("th", ""))),
    h("tbody", sorted.map((rule) => h("tr", { "data-rule": ruleLabel(rule) },
      h("td", { class: "rule-text" }, ruleLabel(rule)),
      h("td", { class: "num support" }, String(rule.support)),
      h("td", { class: "num confidence" }, String(rule.confidence)),
      h("td", { class: "num lift" }, String(rule.lift)),
      h("td", (() => {
        const entity = ruleEntity(rule);
        return entity === null ? "" : h("a", { href: "#", class: "rule-search",
          onclick: (event: Event) => {
            event.preventDefault();
            ui.go({ view: "search", label: "transfer", entity, q: "",
              chapter: null, page: 1 });
          } }, "paragraphs");
      })())))));

  const flowTable = flows === null ? null : h("div", { class: "flows" },
    h("h3", "Transfer flows"),
    h("table", { class: "flow-table" },
      h("thead", h("tr", h("th", "from"), h("th", "to"), h("th", "count"))),
      h("tbody", flows.map((flow) => h("tr",
        h("td", flow.from), h("td", flow.to),
        h("td", { class: "num count" }, String(flow.count)),
        h("td", h("a", { href: "#", class: "flow-search",
          onclick: (event: Event) => {
            event.preventDefault();
            ui.go({ view: "search", label: "transfer", entity: flow.from, q: "",
              chapter: null, page: 1 });
          } }, "paragraphs")))))));

  return h("section", { class: "view transfers" },
    controls,
    h("div", { class: "rule-count" }, `${String(rules.length)} rules`),
    table,
    flowTable ?? h("div", { class: "flows empty" }));
}
