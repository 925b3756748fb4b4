/** Minimal virtual-node layer.
 *
 * Views are pure functions from data to VNode trees, which keeps them
 * testable without a browser; mount() realizes a tree with the DOM API.
 */

export type VChild = VNode | string;

export interface VNode {
  tag: string;
  attrs: Record<string, string | number | boolean>;
  on: Record<string, (event: Event) => void>;
  children: VChild[];
}

type AttrsOrChild = Record<string, unknown> | VChild | VChild[] | null;

export function h(tag: string, attrs?: AttrsOrChild, ...rest: (VChild | VChild[])[]):
    VNode {
  let realAttrs: Record<string, unknown> = {};
  const children: VChild[] = [];
  const push = (child: VChild | VChild[]) => {
    if (Array.isArray(child)) {
      child.forEach((c) => children.push(c));
    } else if (child !== null && child !== undefined) {
      children.push(child);
    }
  };
  if (attrs !== null && attrs !== undefined) {
    if (typeof attrs === "string" || Array.isArray(attrs)
        || (typeof attrs === "object" && "tag" in (attrs as object))) {
      push(attrs as VChild | VChild[]);
    } else {
      realAttrs = attrs as Record<string, unknown>;
    }
  }
  rest.forEach(push);
  const on: VNode["on"] = {};
  const plain: VNode["attrs"] = {};
  for (const [key, value] of Object.entries(realAttrs)) {
    if (key.startsWith("on") && typeof value === "function") {
      on[key.slice(2)] = value as (event: Event) => void;
    } else if (value !== false && value !== undefined && value !== null) {
      plain[key] = value as string | number | boolean;
    }
  }
  return { tag, attrs: plain, on, children };
}

const SVG_NS = "http://www.w3.org/2000/svg";
const SVG_TAGS = new Set(["svg", "line", "circle", "text", "g", "title", "rect"]);

export function mount(node: VChild, doc: Document = document): Node {
  if (typeof node === "string") {
    return doc.createTextNode(node);
  }
  const el = SVG_TAGS.has(node.tag)
    ? doc.createElementNS(SVG_NS, node.tag)
    : doc.createElement(node.tag);
  for (const [key, value] of Object.entries(node.attrs)) {
    if (key === "value" && el instanceof HTMLInputElement) {
      el.value = String(value);
    } else if (key === "checked" && el instanceof HTMLInputElement) {
      el.checked = Boolean(value);
    } else {
      el.setAttribute(key, String(value));
    }
  }
  for (const [event, handler] of Object.entries(node.on)) {
    el.addEventListener(event, handler);
  }
  for (const child of node.children) {
    el.appendChild(mount(child, doc));
  }
  return el;
}

/** All text content of a tree, depth first (test helper, exported for reuse). */
export function textContent(node: VChild): string {
  if (typeof node === "string") return node;
  return node.children.map(textContent).join("");
}

export function findAll(node: VChild, pred: (n: VNode) => boolean): VNode[] {
  if (typeof node === "string") return [];
  const here = pred(node) ? [node] : [];
  return here.concat(node.children.flatMap((c) => findAll(c, pred)));
}
