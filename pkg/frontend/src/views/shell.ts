/** App chrome: navigation, error banner, not-computed notice. */

import { h, VNode } from "../vnode.js";
import type { ViewState } from "../urlState.js";

export interface Actions {
  go(partial: Partial<ViewState>): void;
  retry(): void;
}

const TABS: { view: ViewState["view"]; title: string }[] = [
  { view: "search", title: "Search" },
  { view: "entity", title: "Entities" },
  { view: "networks", title: "Networks" },
  { view: "transfers", title: "Transfers" },
];

export function navBar(state: ViewState, ui: Actions): VNode {
  return h("nav", { class: "tabs" },
    TABS.map((tab) => h("button", {
      class: state.view === tab.view ? "tab active" : "tab",
      "data-view": tab.view,
      onclick: () => ui.go({ view: tab.view }),
    }, tab.title)));
}

export function errorBanner(message: string, ui: Actions): VNode {
  return h("div", { class: "banner error", role: "alert" },
    h("span", `Service unreachable: ${message}`),
    h("button", { class: "retry", onclick: () => ui.retry() }, "Retry"));
}

export function notComputedNotice(what: string): VNode {
  return h("div", { class: "banner notice" },
    `${what} has not been computed for this store yet.`);
}

export function loading(): VNode {
  return h("div", { class: "loading" }, "Loading ...");
}
