/** Payload shapes of the analytics API plus the workspace selection state. */

export interface CompositionMeta {
  id: string;
  title: string;
  composer_id: string;
  composer_name: string;
  composition_type: string;
  opus: string | null;
  epoch: string;
  quality_flags: string[];
}

export interface ComposerEntry {
  composer_id: string;
  display_name: string;
  birth_year: number;
  death_year: number;
  epoch: string;
}

export interface FeatureDescriptor {
  id: string;
  display_name: string;
  category: "melody" | "pitch" | "rhythm";
  description: string;
  unit: string;
}

export interface ProjectionPayload {
  entity_ids: string[];
  coords: [number, number][];
  used_features: string[];
  stress: number;
  degenerate: boolean;
  diameter: number;
  groups: Record<string, string[]> | null;
}

export interface HullPayload {
  label: number;
  vertices: [number, number][];
}

export interface ClusterPayload {
  labels: (number | null)[];
  eps: number;
  min_pts: number;
  hulls: HullPayload[];
}

export interface DistributionPayload {
  feature_id: string;
  selection_stats: { min: number; median: number; max: number };
  corpus_stats: { min: number; median: number; max: number };
  bin_edges: number[];
  selection_histogram: number[];
  corpus_histogram: number[];
}

export interface MatrixRow {
  id: string;
  values: Record<string, number>;
}

export interface PreviewEvent {
  onset_seconds: number;
  duration_seconds: number;
  midi_pitch: number;
  part_index: number;
}

export interface PreviewPayload {
  id: string;
  events: PreviewEvent[];
  truncated: boolean;
  total_duration_seconds: number;
}

export interface UseCasePayload {
  name: string;
  selection: string[];
  selected_features: string[];
  grouping: Grouping;
  eps: number | null;
  color_by: ColorBy;
}

export type Grouping = "none" | "composer" | "type" | "epoch";
export type ColorBy = "epoch" | "type";

/**
 * Single source of truth for every view. `hovered` is transient interaction
 * state and is never persisted into use cases; `epsFraction` is the cluster
 * slider position as a fraction (0.01 .. 1) of the projection diameter so
 * the control stays scale-free, or null while clustering is off.
 */
export interface SelectionState {
  selection: string[];
  features: string[];
  grouping: Grouping;
  colorBy: ColorBy;
  epsFraction: number | null;
  hovered: string | null;
}

export type Point = [number, number];
