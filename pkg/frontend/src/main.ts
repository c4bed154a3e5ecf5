/** Workspace bootstrap: load the corpus, honor ?usecase=slug, mount views. */

import { ApiClient } from "./api.js";
import { Store } from "./state.js";
import { el } from "./views/dom.js";
import { featurePanelView } from "./views/featurepanel.js";
import { matrixView } from "./views/matrixview.js";
import { pianoRollView } from "./views/pianoroll.js";
import { projectionView } from "./views/projection.js";
import { selectionView } from "./views/selection.js";
import { tableView } from "./views/tableview.js";

async function boot(): Promise<void> {
  const app = document.getElementById("app");
  if (!app) throw new Error("missing #app container");

  const store = new Store(new ApiClient(""));
  await store.loadCorpus();

  const left = el("div", { class: "column" }, selectionView(store), featurePanelView(store));
  const center = el("div", { class: "column wide" }, matrixView(store), tableView(store));
  const right = el("div", { class: "column" }, projectionView(store), pianoRollView(store));
  app.append(left, center, right);

  const slug = new URLSearchParams(window.location.search).get("usecase");
  if (slug) {
    try {
      await store.applyUseCase(await store.api.useCase(slug));
      return;
    } catch {
      console.warn(`use case ${slug} not found; starting with full corpus`);
    }
  }
  // default working set: every composition the first page returned
  await store.setSelection([...store.records.keys()]);
}

void boot();
