/** Feature details: description of the focused feature plus the selection
 * vs corpus distribution chart (shared bin edges, min/median/max). */

import type { Store } from "../state.js";
import { clear, el, panel, svg } from "./dom.js";

const WIDTH = 560;
const HEIGHT = 130;
const PAD = 6;

export function featurePanelView(store: Store): HTMLElement {
  const { root, body } = panel("Feature Details");
  root.classList.add("feature-panel");

  function render(): void {
    clear(body);
    const feature = store.focusedFeature;
    if (!feature) {
      body.append(
        el("p", { class: "hint" }, "click a feature column header for details"),
      );
      return;
    }
    const descriptor = store.catalog.find((d) => d.id === feature);
    if (descriptor) {
      body.append(
        el(
          "p",
          { class: "feature-desc" },
          el("strong", {}, descriptor.display_name),
          ` (${descriptor.category}, ${descriptor.unit}) — ${descriptor.description}`,
        ),
      );
    }
    const distribution = store.distribution;
    if (!distribution || distribution.feature_id !== feature) {
      body.append(el("p", { class: "hint" }, "loading distribution..."));
      return;
    }

    const chart = svg("svg", {
      viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
      class: "distribution-svg",
    });
    const corpus = distribution.corpus_histogram;
    const selection = distribution.selection_histogram;
    const bins = corpus.length;
    const peak = Math.max(...corpus, ...selection, 1);
    const barWidth = (WIDTH - 2 * PAD) / bins;
    for (let i = 0; i < bins; i++) {
      const cx = PAD + i * barWidth;
      const corpusHeight = (corpus[i] / peak) * (HEIGHT - 2 * PAD);
      chart.append(
        svg("rect", {
          x: String(cx + 1),
          y: String(HEIGHT - PAD - corpusHeight),
          width: String(Math.max(1, barWidth - 2)),
          height: String(corpusHeight),
          class: "bar-corpus",
        }),
      );
      const selectionHeight = (selection[i] / peak) * (HEIGHT - 2 * PAD);
      chart.append(
        svg("rect", {
          x: String(cx + 1),
          y: String(HEIGHT - PAD - selectionHeight),
          width: String(Math.max(1, barWidth - 2)),
          height: String(selectionHeight),
          class: "bar-selection",
        }),
      );
    }
    body.append(chart);
    const fmt = (v: number) => (Number.isInteger(v) ? String(v) : v.toPrecision(4));
    const s = distribution.selection_stats;
    const c = distribution.corpus_stats;
    body.append(
      el(
        "div",
        { class: "distribution-stats" },
        `selection min ${fmt(s.min)} · median ${fmt(s.median)} · max ${fmt(s.max)}`,
        el("br", {}),
        `corpus min ${fmt(c.min)} · median ${fmt(c.median)} · max ${fmt(c.max)}`,
      ),
    );
  }

  store.subscribe(render);
  render();
  return root;
}
