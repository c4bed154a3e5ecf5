/** Metadata table: alphabetically sortable columns, linked hover, preview. */

import type { Store } from "../state.js";
import type { CompositionMeta } from "../types.js";
import { clear, el, panel } from "./dom.js";

type Column = { key: keyof CompositionMeta; label: string };

const COLUMNS: Column[] = [
  { key: "title", label: "title" },
  { key: "composer_name", label: "composer" },
  { key: "composition_type", label: "type" },
  { key: "opus", label: "opus" },
  { key: "epoch", label: "epoch" },
];

export function tableView(store: Store): HTMLElement {
  const { root, body } = panel("Metadata Table");
  root.classList.add("table-panel");
  let sortKey: keyof CompositionMeta = "title";
  let ascending = true;

  const table = el("table", { class: "meta-table" });

  function render(): void {
    clear(table);
    const head = el("tr", {});
    for (const column of COLUMNS) {
      const arrow = sortKey === column.key ? (ascending ? " ^" : " v") : "";
      const th = el("th", {}, column.label + arrow);
      th.addEventListener("click", () => {
        if (sortKey === column.key) ascending = !ascending;
        else {
          sortKey = column.key;
          ascending = true;
        }
        render();
      });
      head.append(th);
    }
    table.append(head);

    const records = store.state.selection
      .map((id) => store.records.get(id))
      .filter((r): r is CompositionMeta => r !== undefined)
      .sort((a, b) => {
        const va = String(a[sortKey] ?? "");
        const vb = String(b[sortKey] ?? "");
        return (ascending ? 1 : -1) * va.localeCompare(vb);
      });
    const highlighted = store.highlight().compositions;
    for (const record of records) {
      const tr = el(
        "tr",
        {
          class: highlighted.has(record.id) ? "highlighted" : "",
          "data-id": record.id,
        },
        el("td", {}, record.title),
        el("td", {}, record.composer_name),
        el("td", {}, record.composition_type),
        el("td", {}, record.opus ?? ""),
        el("td", {}, record.epoch),
      );
      tr.addEventListener("pointerenter", () => store.setHovered(record.id));
      tr.addEventListener("pointerleave", () => store.setHovered(null));
      tr.addEventListener("click", () => void store.openPreview(record.id));
      table.append(tr);
    }
  }

  body.append(el("div", { class: "table-scroll" }, table));
  store.subscribe(render);
  render();
  return root;
}
