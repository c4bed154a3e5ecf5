/** Composer timeline: lifespan bars in non-overlapping lanes, clickable to
 * toggle composers into the working selection. */

import { epochColorByYear } from "../color.js";
import { assignLanes, laneCount } from "../lanes.js";
import type { Store } from "../state.js";
import { clear, el, svg } from "./dom.js";

const LANE_HEIGHT = 16;
const MARGIN = { left: 8, right: 8, top: 18, bottom: 4 };
const WIDTH = 560;

export function timelineView(
  store: Store,
  onToggleComposer: (composerId: string) => void,
): HTMLElement {
  const body = el("div", { class: "timeline" });

  function render(): void {
    clear(body);
    const composers = store.composers;
    if (composers.length === 0) {
      body.append(el("p", { class: "hint" }, "no composer life data"));
      return;
    }
    const lanes = assignLanes(composers);
    const years = composers.flatMap((c) => [c.birth_year, c.death_year]);
    const lo = Math.min(...years);
    const hi = Math.max(...years);
    const x = (year: number) =>
      MARGIN.left +
      ((year - lo) / Math.max(1, hi - lo)) * (WIDTH - MARGIN.left - MARGIN.right);
    const height = MARGIN.top + laneCount(lanes) * LANE_HEIGHT + MARGIN.bottom;

    const chart = svg("svg", {
      viewBox: `0 0 ${WIDTH} ${height}`,
      class: "timeline-svg",
    });
    for (let year = Math.ceil(lo / 50) * 50; year <= hi; year += 50) {
      const line = svg("line", {
        x1: String(x(year)),
        x2: String(x(year)),
        y1: String(MARGIN.top - 4),
        y2: String(height - MARGIN.bottom),
        class: "timeline-grid",
      });
      const label = svg("text", {
        x: String(x(year)),
        y: "12",
        class: "timeline-year",
        "text-anchor": "middle",
      });
      label.textContent = String(year);
      chart.append(line, label);
    }

    const highlight = store.highlight().composerBars;
    const selectedComposers = new Set(
      store.state.selection.map((id) => store.records.get(id)?.composer_id),
    );
    const byId = new Map(store.composers.map((c) => [c.composer_id, c]));
    for (const lane of lanes) {
      const entry = byId.get(lane.composer_id)!;
      const midyear = (lane.birth_year + lane.death_year) / 2;
      const y = MARGIN.top + lane.lane_index * LANE_HEIGHT;
      const bar = svg("rect", {
        x: String(x(lane.birth_year)),
        y: String(y),
        width: String(Math.max(2, x(lane.death_year) - x(lane.birth_year))),
        height: String(LANE_HEIGHT - 4),
        rx: "3",
        fill: epochColorByYear(midyear),
        class: [
          "timeline-bar",
          highlight.has(lane.composer_id) ? "highlighted" : "",
          selectedComposers.has(lane.composer_id) ? "active" : "",
        ].join(" "),
        "data-composer": lane.composer_id,
      });
      const title = svg("title", {});
      title.textContent = `${entry.display_name} (${lane.birth_year}-${lane.death_year}, ${entry.epoch})`;
      bar.append(title);
      bar.addEventListener("click", () => onToggleComposer(lane.composer_id));
      bar.addEventListener("pointerenter", () =>
        store.setHovered(lane.composer_id),
      );
      bar.addEventListener("pointerleave", () => store.setHovered(null));
      chart.append(bar);
    }
    body.append(chart);
  }

  store.subscribe(render);
  render();
  return body;
}
