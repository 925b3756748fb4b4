/** Controller: URL-driven state, data fetching, and rendering.
 *
 * All navigation funnels through go(), which serializes state into the URL
 * (pushState) and re-renders; popstate re-parses the URL so back/forward
 * restore views exactly.  Fetches run through a sequencer so a stale slow
 * response can never overwrite a newer view.
 */

import { ApiClient, ApiError } from "./api.js";
import { computeLayout } from "./forceLayout.js";
import { RequestSequencer } from "./sequencer.js";
import { DEFAULT_STATE, stateFromQuery, stateToQuery, ViewState } from "./urlState.js";
import { h, mount, VNode } from "./vnode.js";
import { errorBanner, navBar, notComputedNotice, loading, Actions } from "./views/shell.js";
import { renderEntities } from "./views/entity.js";
import { renderNetworks, GRAPH_WIDTH, GRAPH_HEIGHT } from "./views/networks.js";
import { renderParagraph } from "./views/paragraph.js";
import { renderSearch } from "./views/search.js";
import { renderTransfers } from "./views/transfers.js";

const LAYOUT_SEED = 42;

export class App {
  state: ViewState = { ...DEFAULT_STATE };
  private readonly sequencer = new RequestSequencer();

  constructor(
    private readonly api: ApiClient,
    private readonly root: Element,
    private readonly win: Window = window,
  ) {}

  start(): void {
    this.state = stateFromQuery(this.win.location.search);
    this.win.addEventListener("popstate", () => {
      this.state = stateFromQuery(this.win.location.search);
      void this.render();
    });
    void this.render();
  }

  private readonly actions: Actions = {
    go: (partial: Partial<ViewState>) => {
      this.state = { ...this.state, ...partial };
      const url = this.win.location.pathname + stateToQuery(this.state);
      this.win.history.pushState(null, "", url);
      void this.render();
    },
    retry: () => void this.render(),
  };

  async render(): Promise<void> {
    this.show(loading());
    let body: VNode;
    try {
      const built = await this.sequencer.run(() => this.buildView());
      if (built === null) {
        return;                       // superseded by a newer navigation
      }
      body = built;
    } catch (err) {
      body = this.renderError(err);
    }
    this.show(body);
  }

  private renderError(err: unknown): VNode {
    if (err instanceof ApiError) {
      if (err.unreachable) {
        return errorBanner(err.detail, this.actions);
      }
      if (err.notComputed) {
        return notComputedNotice("This view's data");
      }
      return h("div", { class: "banner notice" }, `${err.error}: ${err.detail}`);
    }
    throw err;
  }

  private async buildView(): Promise<VNode> {
    const state = this.state;
    switch (state.view) {
      case "search": {
        const hasFilter = state.q !== "" || state.label !== ""
          || state.entity !== "" || state.chapter !== null;
        const page = hasFilter
          ? await this.api.searchParagraphs({
            q: state.q || undefined,
            label: state.label || undefined,
            entity: state.entity || undefined,
            chapter: state.chapter ?? undefined,
            page: state.page,
          })
          : null;
        return renderSearch(state, page, this.actions);
      }
      case "paragraph":
        return renderParagraph(await this.api.paragraph(state.paraId), this.actions);
      case "entity": {
        if (state.selectedEntity !== "") {
          const [entity, timeline] = await Promise.all([
            this.api.entity(state.selectedEntity),
            this.api.timeline(state.selectedEntity),
          ]);
          return renderEntities(state, null, { entity, timeline }, this.actions);
        }
        return renderEntities(state, await this.api.entities(undefined, 1, 200),
          null, this.actions);
      }
      case "networks": {
        const graph = await this.api.network(state.graph, state.minWeight);
        const layout = computeLayout(graph, {
          width: GRAPH_WIDTH, height: GRAPH_HEIGHT, seed: LAYOUT_SEED,
        });
        return renderNetworks(state, graph, layout, this.actions);
      }
      case "transfers": {
        const [rules, flows] = await Promise.all([
          this.api.transferRules(state.minSupport, state.minConfidence),
          this.api.flows(),
        ]);
        return renderTransfers(state, rules.rules, flows.flows, this.actions);
      }
    }
  }

  private show(body: VNode): void {
    const doc = this.root.ownerDocument;
    const tree = h("div", { class: "app" }, navBar(this.state, this.actions), body);
    this.root.replaceChildren(mount(tree, doc));
  }
}
