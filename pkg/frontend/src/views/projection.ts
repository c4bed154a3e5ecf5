/** Projection view: similarity scatter with lasso selection, an eps slider
 * for density clustering, and concave hull outlines around clusters. */

import { epochColor, epochColorByYear, typeColor, UNKNOWN_COLOR } from "../color.js";
import { lassoSelect } from "../geometry.js";
import type { Store } from "../state.js";
import type { Point } from "../types.js";
import { clear, el, panel, svg } from "./dom.js";

const SIZE = 520;
const PAD = 30;

export function projectionView(store: Store): HTMLElement {
  const { root, head, body } = panel("Projection");
  root.classList.add("projection-panel");

  const epsToggle = el("input", { type: "checkbox", id: "eps-toggle" });
  const epsSlider = el("input", {
    type: "range",
    min: "1",
    max: "100",
    value: "25",
    class: "eps-slider",
  });
  epsSlider.disabled = true;
  const epsLabel = el("span", { class: "eps-label" }, "clusters off");

  function pushEps(): void {
    if (!epsToggle.checked) {
      epsLabel.textContent = "clusters off";
      void store.setEpsFraction(null);
      return;
    }
    const fraction = Number(epsSlider.value) / 100;
    epsLabel.textContent = `eps ${epsSlider.value}%`;
    void store.setEpsFraction(fraction);
  }
  epsToggle.addEventListener("change", () => {
    epsSlider.disabled = !epsToggle.checked;
    pushEps();
  });
  epsSlider.addEventListener("input", pushEps);
  head.append(
    el("label", { class: "eps-control", for: "eps-toggle" }, epsToggle, "cluster"),
    epsSlider,
    epsLabel,
  );

  const stage = el("div", { class: "projection-stage" });
  body.append(stage);

  function entityColor(id: string): string {
    const record = store.records.get(id);
    if (store.state.colorBy === "type") {
      const type = record?.composition_type ?? (store.taxonomy.includes(id) ? id : null);
      return type ? typeColor(type, store.taxonomy) : UNKNOWN_COLOR;
    }
    if (record) {
      const composer = store.composers.find(
        (c) => c.composer_id === record.composer_id,
      );
      if (composer) {
        return epochColorByYear((composer.birth_year + composer.death_year) / 2);
      }
      return epochColor(record.epoch);
    }
    // group circle: composer id, epoch name, or type name
    const composer = store.composers.find((c) => c.composer_id === id);
    if (composer) {
      return epochColorByYear((composer.birth_year + composer.death_year) / 2);
    }
    return epochColor(id);
  }

  function entityInitials(id: string): string {
    const record = store.records.get(id);
    const name = record ? record.composer_name : id;
    return name
      .split(/[\s-]+/)
      .filter(Boolean)
      .slice(0, 2)
      .map((part) => part[0].toUpperCase())
      .join("");
  }

  function render(): void {
    clear(stage);
    const layout = store.layout;
    if (!layout) {
      stage.append(
        el("p", { class: "hint" }, "projection appears once a selection is made"),
      );
      return;
    }
    if (layout.degenerate) {
      stage.append(
        el("p", { class: "hint" }, "all selected entities are identical under the chosen features"),
      );
    }

    const xs = layout.coords.map((c) => c[0]);
    const ys = layout.coords.map((c) => c[1]);
    const lo = Math.min(Math.min(...xs), Math.min(...ys));
    const hi = Math.max(Math.max(...xs), Math.max(...ys));
    const span = Math.max(hi - lo, 1e-9);
    const sx = (v: number) => PAD + ((v - lo) / span) * (SIZE - 2 * PAD);
    const sy = (v: number) => SIZE - PAD - ((v - lo) / span) * (SIZE - 2 * PAD);

    const chart = svg("svg", {
      viewBox: `0 0 ${SIZE} ${SIZE}`,
      class: "projection-svg",
    });

    // hulls first so circles render on top
    for (const hull of store.clusters?.hulls ?? []) {
      if (hull.vertices.length >= 3) {
        const path = hull.vertices
          .map(([x, y], i) => `${i === 0 ? "M" : "L"}${sx(x)},${sy(y)}`)
          .join(" ");
        chart.append(svg("path", { d: path + " Z", class: "hull" }));
      } else if (hull.vertices.length === 2) {
        const [[x1, y1], [x2, y2]] = hull.vertices;
        chart.append(
          svg("line", {
            x1: String(sx(x1)),
            y1: String(sy(y1)),
            x2: String(sx(x2)),
            y2: String(sy(y2)),
            class: "hull hull-capsule",
          }),
        );
      } else if (hull.vertices.length === 1) {
        const [[x, y]] = hull.vertices;
        chart.append(
          svg("circle", {
            cx: String(sx(x)),
            cy: String(sy(y)),
            r: "14",
            class: "hull hull-capsule",
          }),
        );
      }
    }

    const highlight = store.highlight().entities;
    const grouped = layout.groups !== null;
    const labels = store.clusters?.labels;
    layout.entity_ids.forEach((id, i) => {
      const [x, y] = layout.coords[i];
      const noise = labels ? labels[i] === null : false;
      const circle = svg("circle", {
        cx: String(sx(x)),
        cy: String(sy(y)),
        r: grouped ? "11" : "6",
        fill: entityColor(id),
        class: [
          "dot",
          highlight.has(id) ? "highlighted" : "",
          labels && noise ? "noise" : "",
        ].join(" "),
        "data-entity": id,
      });
      const title = svg("title", {});
      const record = store.records.get(id);
      title.textContent = record
        ? `${record.title} — ${record.composer_name}`
        : `${id} (${layout.groups?.[id]?.length ?? 0} pieces)`;
      circle.append(title);
      circle.addEventListener("pointerenter", () => store.setHovered(id));
      circle.addEventListener("pointerleave", () => store.setHovered(null));
      circle.addEventListener("click", () => {
        const record = store.records.get(id);
        if (record) void store.openPreview(id);
      });
      chart.append(circle);
      if (grouped) {
        const text = svg("text", {
          x: String(sx(x)),
          y: String(sy(y) + 3),
          class: "dot-label",
          "text-anchor": "middle",
        });
        text.textContent = entityInitials(id);
        chart.append(text);
      }
    });

    attachLasso(chart, store, sx, sy);
    stage.append(chart);
    stage.append(
      el(
        "div",
        { class: "projection-meta" },
        `stress ${layout.stress.toFixed(3)} · features ${layout.used_features.length}` +
          (store.clusters ? ` · clusters ${store.clusters.hulls.length}` : ""),
      ),
    );
  }

  store.subscribe(render);
  render();
  return root;
}

/** Freehand lasso: drag on empty canvas; entities inside become the
 * selection (group circles contribute their member compositions). */
function attachLasso(
  chart: SVGSVGElement,
  store: Store,
  sx: (v: number) => number,
  sy: (v: number) => number,
): void {
  let drawing: Point[] | null = null;
  let path: SVGPathElement | null = null;

  function screenPoint(event: PointerEvent): Point {
    const rect = chart.getBoundingClientRect();
    return [
      ((event.clientX - rect.left) / rect.width) * chart.viewBox.baseVal.width,
      ((event.clientY - rect.top) / rect.height) * chart.viewBox.baseVal.height,
    ];
  }

  chart.addEventListener("pointerdown", (event) => {
    if (event.target !== chart) return; // drags on circles are hovers/clicks
    drawing = [screenPoint(event)];
    path = svg("path", { class: "lasso" });
    chart.append(path);
    chart.setPointerCapture(event.pointerId);
  });
  chart.addEventListener("pointermove", (event) => {
    if (!drawing || !path) return;
    drawing.push(screenPoint(event));
    path.setAttribute(
      "d",
      drawing.map(([x, y], i) => `${i === 0 ? "M" : "L"}${x},${y}`).join(" ") + " Z",
    );
  });
  chart.addEventListener("pointerup", () => {
    if (!drawing || !path) return;
    const polygon = drawing;
    drawing = null;
    path.remove();
    path = null;
    const layout = store.layout;
    if (!layout || polygon.length < 3) return;
    const screenCoords: Point[] = layout.coords.map(([x, y]) => [sx(x), sy(y)]);
    const inside = lassoSelect(layout.entity_ids, screenCoords, polygon);
    if (inside.length === 0) return;
    const members = layout.groups
      ? inside.flatMap((id) => layout.groups![id] ?? [])
      : inside;
    void store.setSelection(members);
  });
}
