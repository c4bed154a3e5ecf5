/** Minimal DOM construction helpers shared by all views. */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function svg<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function panel(title: string, ...extra: (Node | string)[]): {
  root: HTMLElement;
  head: HTMLElement;
  body: HTMLElement;
} {
  const head = el("div", { class: "panel-head" }, el("h2", {}, title), ...extra);
  const body = el("div", { class: "panel-body" });
  const root = el("section", { class: "panel" }, head, body);
  return { root, head, body };
}
