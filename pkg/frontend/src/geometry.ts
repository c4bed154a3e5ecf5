/** Planar helpers for lasso selection. */

import type { Point } from "./types.js";

/** Ray-casting point-in-polygon test; boundary points count as inside. */
export function pointInPolygon(point: Point, polygon: Point[]): boolean {
  const n = polygon.length;
  if (n < 3) return false;
  const [x, y] = point;
  for (let i = 0; i < n; i++) {
    if (onSegment(point, polygon[i], polygon[(i + 1) % n])) return true;
  }
  let inside = false;
  for (let i = 0, j = n - 1; i < n; j = i++) {
    const [xi, yi] = polygon[i];
    const [xj, yj] = polygon[j];
    if (yi > y !== yj > y && x < ((xj - xi) * (y - yi)) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

function onSegment(p: Point, a: Point, b: Point, tol = 1e-9): boolean {
  const cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
  const lengthSq = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2;
  if (cross * cross > tol * tol * Math.max(lengthSq, 1)) return false;
  const dot =
    (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
  return dot >= -tol && dot <= lengthSq + tol;
}

/** Entities whose coordinates fall inside the lasso polygon. */
export function lassoSelect(
  entityIds: string[],
  coords: Point[],
  polygon: Point[],
): string[] {
  return entityIds.filter((_, i) => pointInPolygon(coords[i], polygon));
}
