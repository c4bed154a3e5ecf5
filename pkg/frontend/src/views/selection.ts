/** Data import and selection: keyword search, type chips, composer timeline,
 * grouping/color controls, use-case loader, and score upload. */

import { typeColor } from "../color.js";
import type { Store } from "../state.js";
import type { ColorBy, Grouping } from "../types.js";
import { clear, el, panel } from "./dom.js";
import { timelineView } from "./timeline.js";

interface Filters {
  keyword: string;
  composers: Set<string>;
  types: Set<string>;
}

export function selectionView(store: Store): HTMLElement {
  const { root, body } = panel("Data Selection");
  const filters: Filters = { keyword: "", composers: new Set(), types: new Set() };

  function matchingIds(): string[] {
    const needle = filters.keyword.toLowerCase();
    const ids: string[] = [];
    for (const record of store.records.values()) {
      if (
        needle &&
        !record.title.toLowerCase().includes(needle) &&
        !record.composer_name.toLowerCase().includes(needle)
      ) {
        continue;
      }
      if (filters.composers.size > 0 && !filters.composers.has(record.composer_id)) {
        continue;
      }
      if (filters.types.size > 0 && !filters.types.has(record.composition_type)) {
        continue;
      }
      ids.push(record.id);
    }
    ids.sort((a, b) => {
      const ra = store.records.get(a)!;
      const rb = store.records.get(b)!;
      return ra.title.localeCompare(rb.title) || a.localeCompare(b);
    });
    return ids;
  }

  function applyFilters(): void {
    void store.setSelection(matchingIds());
  }

  const search = el("input", {
    type: "search",
    placeholder: "search titles and composers",
    class: "search",
  });
  search.addEventListener("input", () => {
    filters.keyword = search.value.trim();
    applyFilters();
  });

  const chipRow = el("div", { class: "chips" });
  function renderChips(): void {
    clear(chipRow);
    const present = new Set(
      [...store.records.values()].map((r) => r.composition_type),
    );
    const highlighted = store.highlight().typeChips;
    for (const type of store.taxonomy) {
      if (!present.has(type)) continue;
      const chip = el(
        "button",
        {
          class: [
            "chip",
            filters.types.has(type) ? "active" : "",
            highlighted.has(type) ? "highlighted" : "",
          ].join(" "),
          "data-type": type,
        },
        type,
      );
      chip.style.setProperty("--chip-color", typeColor(type, store.taxonomy));
      chip.addEventListener("click", () => {
        if (filters.types.has(type)) filters.types.delete(type);
        else filters.types.add(type);
        applyFilters();
      });
      chip.addEventListener("pointerenter", () => store.setHovered(type));
      chip.addEventListener("pointerleave", () => store.setHovered(null));
      chipRow.append(chip);
    }
  }

  const groupingSelect = el("select", { class: "control" });
  for (const mode of ["none", "composer", "type", "epoch"]) {
    groupingSelect.append(el("option", { value: mode }, `group: ${mode}`));
  }
  groupingSelect.addEventListener("change", () => {
    void store.setGrouping(groupingSelect.value as Grouping);
  });

  const colorSelect = el("select", { class: "control" });
  for (const mode of ["epoch", "type"]) {
    colorSelect.append(el("option", { value: mode }, `color: ${mode}`));
  }
  colorSelect.addEventListener("change", () => {
    store.setColorBy(colorSelect.value as ColorBy);
  });

  const usecaseSelect = el("select", { class: "control" });
  async function loadUseCaseList(): Promise<void> {
    clear(usecaseSelect);
    usecaseSelect.append(el("option", { value: "" }, "load use case..."));
    const { items } = await store.api.useCases();
    for (const item of items) {
      usecaseSelect.append(el("option", { value: item.name }, item.name));
    }
  }
  usecaseSelect.addEventListener("change", async () => {
    if (!usecaseSelect.value) return;
    const useCase = await store.api.useCase(usecaseSelect.value);
    await store.applyUseCase(useCase);
    const url = new URL(window.location.href);
    url.searchParams.set("usecase", useCase.name);
    window.history.replaceState(null, "", url.toString());
  });

  const saveButton = el("button", { class: "control" }, "save use case");
  saveButton.addEventListener("click", async () => {
    const name = window.prompt("slug for this configuration (a-z, 0-9, -):");
    if (!name) return;
    try {
      await store.api.saveUseCase(store.currentUseCase(name));
      await loadUseCaseList();
      usecaseSelect.value = name;
    } catch (err) {
      window.alert(String(err));
    }
  });

  const uploadInput = el("input", {
    type: "file",
    accept: ".mxl,.xml,.musicxml",
    class: "hidden-input",
  });
  const uploadButton = el("button", { class: "control" }, "upload score");
  uploadButton.addEventListener("click", () => uploadInput.click());
  uploadInput.addEventListener("change", async () => {
    const file = uploadInput.files?.[0];
    if (!file) return;
    try {
      const record = await store.api.upload(file);
      await store.loadCorpus();
      await store.setSelection([...store.state.selection, record.id]);
    } catch (err) {
      window.alert(String(err));
    } finally {
      uploadInput.value = "";
    }
  });

  const resetButton = el("button", { class: "control" }, "reset");
  resetButton.addEventListener("click", () => {
    filters.keyword = "";
    filters.composers.clear();
    filters.types.clear();
    search.value = "";
    groupingSelect.value = "none";
    usecaseSelect.value = "";
    applyFilters();
  });

  const summary = el("div", { class: "summary" });
  function renderSummary(): void {
    summary.textContent =
      `${store.state.selection.length} of ${store.records.size} compositions selected` +
      (store.lastError ? ` — ${store.lastError}` : "");
  }

  body.append(
    search,
    chipRow,
    timelineView(store, (composerId) => {
      if (filters.composers.has(composerId)) filters.composers.delete(composerId);
      else filters.composers.add(composerId);
      applyFilters();
    }),
    el(
      "div",
      { class: "controls" },
      groupingSelect,
      colorSelect,
      usecaseSelect,
      saveButton,
      uploadButton,
      resetButton,
    ),
    summary,
  );

  store.subscribe(() => {
    renderChips();
    renderSummary();
  });
  renderChips();
  renderSummary();
  void loadUseCaseList();
  return root;
}
