/** Pure feature-matrix logic: sorting on raw values, color normalization. */

import type { MatrixRow } from "./types.js";

export type SortDirection = "asc" | "desc";

export interface MatrixSort {
  feature: string;
  direction: SortDirection;
}

/**
 * Order rows by the raw value of one feature (standardization happens
 * server-side for the projection only and never affects ordering here).
 * The sort is stable so equal values keep their incoming order.
 */
export function sortRows(
  rows: MatrixRow[],
  sort: MatrixSort | null,
): MatrixRow[] {
  if (sort === null) return [...rows];
  const sign = sort.direction === "asc" ? 1 : -1;
  return rows
    .map((row, index) => ({ row, index }))
    .sort((a, b) => {
      const diff = a.row.values[sort.feature] - b.row.values[sort.feature];
      if (diff !== 0) return sign * diff;
      return a.index - b.index;
    })
    .map((entry) => entry.row);
}

/**
 * Min-max normalizer for one column, used for cell color only (tooltips
 * show raw values). A constant column maps to the middle of the ramp.
 */
export function columnScale(
  rows: MatrixRow[],
  feature: string,
): (value: number) => number {
  let lo = Infinity;
  let hi = -Infinity;
  for (const row of rows) {
    const v = row.values[feature];
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!isFinite(lo) || lo === hi) return () => 0.5;
  return (value) => (value - lo) / (hi - lo);
}

/** Argmax entity of a raw feature column (ties to the earlier row). */
export function argmaxEntity(rows: MatrixRow[], feature: string): string | null {
  let best: MatrixRow | null = null;
  for (const row of rows) {
    if (best === null || row.values[feature] > best.values[feature]) {
      best = row;
    }
  }
  return best?.id ?? null;
}
