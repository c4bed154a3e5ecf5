/** Feature matrix: heatmap-colored rows per entity, sortable on raw values. */

import { heatColor } from "../color.js";
import { columnScale, sortRows, type MatrixSort } from "../matrix.js";
import type { Store } from "../state.js";
import { clear, el, panel } from "./dom.js";

export function matrixView(store: Store): HTMLElement {
  const { root, body } = panel("Feature Matrix");
  root.classList.add("matrix-panel");
  let sort: MatrixSort | null = null;

  const featurePicker = el("details", { class: "feature-picker" });
  const pickerBody = el("div", { class: "picker-body" });
  featurePicker.append(el("summary", {}, "features"), pickerBody);

  function renderPicker(): void {
    clear(pickerBody);
    for (const category of ["melody", "pitch", "rhythm"] as const) {
      const column = el("div", { class: "picker-column" }, el("h3", {}, category));
      for (const descriptor of store.catalog.filter((d) => d.category === category)) {
        const checkbox = el("input", { type: "checkbox" });
        checkbox.checked = store.state.features.includes(descriptor.id);
        checkbox.addEventListener("change", () => {
          const current = new Set(store.state.features);
          if (checkbox.checked) current.add(descriptor.id);
          else current.delete(descriptor.id);
          void store.setFeatures(
            store.catalog.map((d) => d.id).filter((id) => current.has(id)),
          );
        });
        column.append(
          el("label", { class: "picker-item" }, checkbox, descriptor.display_name),
        );
      }
      pickerBody.append(column);
    }
  }

  const table = el("table", { class: "matrix" });

  function entityLabel(id: string): string {
    const record = store.records.get(id);
    if (record) return record.title;
    return id; // group key (composer id, type, or epoch)
  }

  function render(): void {
    clear(table);
    const rows = store.matrixRows;
    if (rows.length === 0) {
      table.append(
        el("caption", {}, "select at least two compositions and one feature"),
      );
      return;
    }
    const features = store.state.features.filter((f) => f in rows[0].values);
    const head = el("tr", {}, el("th", { class: "entity-col" }, "entity"));
    for (const feature of features) {
      const descriptor = store.catalog.find((d) => d.id === feature);
      const arrow =
        sort?.feature === feature ? (sort.direction === "asc" ? " ^" : " v") : "";
      const th = el(
        "th",
        { class: "feature-col", title: descriptor?.description ?? feature },
        (descriptor?.display_name ?? feature) + arrow,
      );
      th.addEventListener("click", () => {
        sort =
          sort?.feature === feature && sort.direction === "desc"
            ? { feature, direction: "asc" }
            : { feature, direction: "desc" };
        void store.focusFeature(feature);
        render();
      });
      head.append(th);
    }
    table.append(head);

    const scales = new Map(
      features.map((f) => [f, columnScale(rows, f)] as const),
    );
    const highlight = store.highlight().entities;
    for (const row of sortRows(rows, sort)) {
      const tr = el("tr", {
        class: highlight.has(row.id) ? "highlighted" : "",
        "data-entity": row.id,
      });
      tr.append(el("td", { class: "entity-col", title: row.id }, entityLabel(row.id)));
      for (const feature of features) {
        const value = row.values[feature];
        const cell = el("td", {
          class: "cell",
          title: `${entityLabel(row.id)} — ${feature}: ${formatValue(value)}`,
        });
        cell.style.background = heatColor(scales.get(feature)!(value));
        tr.append(cell);
      }
      tr.addEventListener("pointerenter", () => store.setHovered(row.id));
      tr.addEventListener("pointerleave", () => store.setHovered(null));
      table.append(tr);
    }
  }

  body.append(featurePicker, el("div", { class: "matrix-scroll" }, table));
  store.subscribe(() => {
    renderPicker();
    render();
  });
  renderPicker();
  render();
  return root;
}

function formatValue(value: number): string {
  if (Number.isInteger(value)) return String(value);
  return value.toPrecision(4);
}
