/** Workspace store: one SelectionState drives every view and round trip.
 *
 * Views subscribe and render from the store; they never keep private copies
 * of corpus data. Server requests fire only on state diffs: selection,
 * feature, or grouping changes refresh the projection and matrix; an eps
 * change re-requests clusters only; hover changes touch no network at all.
 */

import { ApiClient, Superseded } from "./api.js";
import { computeHighlight, type HighlightState } from "./highlight.js";
import type {
  ClusterPayload,
  ColorBy,
  CompositionMeta,
  ComposerEntry,
  DistributionPayload,
  FeatureDescriptor,
  Grouping,
  MatrixRow,
  Point,
  SelectionState,
  UseCasePayload,
} from "./types.js";

export type Listener = (store: Store) => void;

const DEFAULT_FEATURES = [
  "note_density",
  "pitch_variety",
  "average_melodic_interval",
  "repeated_notes",
  "most_common_pitch_class_prevalence",
  "melodic_octaves",
];

export class Store {
  state: SelectionState = {
    selection: [],
    features: [...DEFAULT_FEATURES],
    grouping: "none",
    colorBy: "epoch",
    epsFraction: null,
    hovered: null,
  };

  records = new Map<string, CompositionMeta>();
  composers: ComposerEntry[] = [];
  taxonomy: string[] = [];
  catalog: FeatureDescriptor[] = [];

  layout: import("./types.js").ProjectionPayload | null = null;
  clusters: ClusterPayload | null = null;
  matrixRows: MatrixRow[] = [];
  distribution: DistributionPayload | null = null;
  focusedFeature: string | null = null;
  previewId: string | null = null;
  lastError: string | null = null;

  private listeners: Listener[] = [];

  constructor(readonly api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this);
  }

  // ------------------------------------------------------------------
  // Bootstrap

  async loadCorpus(): Promise<void> {
    const [compositions, composers, types, catalog] = await Promise.all([
      this.api.compositions({ limit: "1000" }),
      this.api.composers(),
      this.api.types(),
      this.api.featureCatalog(),
    ]);
    this.records = new Map(compositions.items.map((item) => [item.id, item]));
    this.composers = composers.items;
    this.taxonomy = types.types;
    this.catalog = catalog.features;
    this.emit();
  }

  // ------------------------------------------------------------------
  // SelectionState transitions (each drives its own round trips)

  async setSelection(ids: string[]): Promise<void> {
    this.state.selection = ids.filter((id) => this.records.has(id));
    this.state.hovered = null;
    this.emit();
    await this.refreshDerived();
  }

  async setFeatures(features: string[]): Promise<void> {
    this.state.features = features;
    this.emit();
    await this.refreshDerived();
  }

  async setGrouping(grouping: Grouping): Promise<void> {
    this.state.grouping = grouping;
    this.emit();
    await this.refreshDerived();
  }

  setColorBy(colorBy: ColorBy): void {
    this.state.colorBy = colorBy;
    this.emit(); // pure re-render, no server round trip
  }

  async setEpsFraction(fraction: number | null): Promise<void> {
    this.state.epsFraction = fraction;
    this.emit();
    await this.refreshClusters(); // eps moves re-request clusters only
  }

  setHovered(entity: string | null): void {
    if (this.state.hovered === entity) return;
    this.state.hovered = entity;
    this.emit(); // transient: never persisted, never a round trip
  }

  async focusFeature(feature: string | null): Promise<void> {
    this.focusedFeature = feature;
    this.distribution = null;
    this.emit();
    if (feature !== null && this.state.selection.length > 0) {
      try {
        this.distribution = await this.api.distribution(
          feature,
          this.state.selection,
        );
      } catch (err) {
        if (err instanceof Superseded) return;
        throw err;
      }
      this.emit();
    }
  }

  async openPreview(id: string | null): Promise<void> {
    this.previewId = id;
    this.emit();
  }

  // ------------------------------------------------------------------
  // Use cases

  async applyUseCase(useCase: UseCasePayload): Promise<void> {
    this.state.selection = useCase.selection.filter((id) =>
      this.records.has(id),
    );
    this.state.features = useCase.selected_features;
    this.state.grouping = useCase.grouping;
    this.state.colorBy = useCase.color_by;
    this.state.epsFraction = useCase.eps;
    this.state.hovered = null;
    this.emit();
    await this.refreshDerived();
  }

  currentUseCase(name: string): UseCasePayload {
    return {
      name,
      selection: [...this.state.selection],
      selected_features: [...this.state.features],
      grouping: this.state.grouping,
      eps: this.state.epsFraction,
      color_by: this.state.colorBy,
    };
  }

  // ------------------------------------------------------------------
  // Derived server data

  highlight(): HighlightState {
    return computeHighlight(this.state.hovered, {
      records: this.records,
      groups: this.layout?.groups ?? null,
      selection: this.state.selection,
    });
  }

  private async refreshDerived(): Promise<void> {
    const { selection, features, grouping } = this.state;
    if (selection.length < 2 || features.length === 0) {
      this.layout = null;
      this.clusters = null;
      this.matrixRows = [];
      this.emit();
      return;
    }
    try {
      const [layout, rows] = await Promise.all([
        this.api.projection({ ids: selection, features, grouping }),
        this.api.featureRows(selection, features),
      ]);
      this.layout = layout;
      this.matrixRows =
        grouping === "none" ? rows.rows : groupMeans(layout.groups ?? {}, rows.rows);
      this.lastError = null;
    } catch (err) {
      if (err instanceof Superseded) return;
      this.lastError = String(err);
      this.emit();
      return;
    }
    this.emit();
    await this.refreshClusters();
  }

  private async refreshClusters(): Promise<void> {
    const layout = this.layout;
    const fraction = this.state.epsFraction;
    if (!layout || fraction === null || layout.coords.length < 2) {
      this.clusters = null;
      this.emit();
      return;
    }
    const eps = Math.max(fraction, 0.01) * Math.max(layout.diameter, 1e-12);
    try {
      this.clusters = await this.api.clusters(layout.coords as Point[], eps);
      this.lastError = null;
    } catch (err) {
      if (err instanceof Superseded) return;
      this.lastError = String(err);
    }
    this.emit();
  }
}

/** Client-side group rows: per-feature arithmetic means of member rows,
 * matching the server's aggregation rule. */
export function groupMeans(
  groups: Record<string, string[]>,
  rows: MatrixRow[],
): MatrixRow[] {
  const byId = new Map(rows.map((row) => [row.id, row]));
  const out: MatrixRow[] = [];
  for (const [key, members] of Object.entries(groups)) {
    const present = members
      .map((id) => byId.get(id))
      .filter((row): row is MatrixRow => row !== undefined);
    if (present.length === 0) continue;
    const values: Record<string, number> = {};
    for (const feature of Object.keys(present[0].values)) {
      let total = 0;
      for (const row of present) total += row.values[feature];
      values[feature] = total / present.length;
    }
    out.push({ id: key, values });
  }
  out.sort((a, b) => a.id.localeCompare(b.id));
  return out;
}
