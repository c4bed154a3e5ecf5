import { describe, expect, it } from "vitest";

import { lassoSelect, pointInPolygon } from "../src/geometry.js";
import type { Point } from "../src/types.js";

/** Independent crossing-number oracle (different code path than the
 * implementation: explicit segment-intersection counting with a far ray). */
function oracleInside(point: Point, polygon: Point[]): boolean {
  const [x, y] = point;
  for (let i = 0; i < polygon.length; i++) {
    const a = polygon[i];
    const b = polygon[(i + 1) % polygon.length];
    const cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
    const within =
      Math.min(a[0], b[0]) - 1e-9 <= x &&
      x <= Math.max(a[0], b[0]) + 1e-9 &&
      Math.min(a[1], b[1]) - 1e-9 <= y &&
      y <= Math.max(a[1], b[1]) + 1e-9;
    if (Math.abs(cross) < 1e-9 && within) return true; // boundary
  }
  let crossings = 0;
  for (let i = 0; i < polygon.length; i++) {
    const [x1, y1] = polygon[i];
    const [x2, y2] = polygon[(i + 1) % polygon.length];
    if (y1 > y !== y2 > y) {
      const xAt = x1 + ((y - y1) / (y2 - y1)) * (x2 - x1);
      if (xAt > x) crossings++;
    }
  }
  return crossings % 2 === 1;
}

const SQUARE: Point[] = [
  [0, 0],
  [10, 0],
  [10, 10],
  [0, 10],
];

describe("pointInPolygon", () => {
  it("accepts interior and boundary, rejects exterior", () => {
    expect(pointInPolygon([5, 5], SQUARE)).toBe(true);
    expect(pointInPolygon([0, 5], SQUARE)).toBe(true);
    expect(pointInPolygon([10, 10], SQUARE)).toBe(true);
    expect(pointInPolygon([-1, 5], SQUARE)).toBe(false);
    expect(pointInPolygon([11, 5], SQUARE)).toBe(false);
  });

  it("handles concave lasso shapes", () => {
    const cShape: Point[] = [
      [0, 0],
      [8, 0],
      [8, 2],
      [2, 2],
      [2, 8],
      [8, 8],
      [8, 10],
      [0, 10],
    ];
    expect(pointInPolygon([1, 5], cShape)).toBe(true);
    expect(pointInPolygon([5, 5], cShape)).toBe(false); // inside the mouth
    expect(pointInPolygon([5, 1], cShape)).toBe(true);
  });

  it("matches the crossing-number oracle on random points", () => {
    let seed = 7;
    const rand = () => {
      seed = (seed * 1103515245 + 12345) % 2 ** 31;
      return seed / 2 ** 31;
    };
    const polygon: Point[] = [
      [1, 1],
      [9, 0.5],
      [10, 6],
      [6, 9.5],
      [4, 6],
      [0.5, 8],
    ];
    for (let i = 0; i < 500; i++) {
      const point: Point = [rand() * 11 - 0.5, rand() * 11 - 0.5];
      expect(pointInPolygon(point, polygon)).toBe(oracleInside(point, polygon));
    }
  });
});

describe("lassoSelect", () => {
  it("selects exactly the entities whose coordinates fall inside", () => {
    const ids = ["a", "b", "c", "d"];
    const coords: Point[] = [
      [1, 1],
      [5, 5],
      [11, 11],
      [9.99, 9.99],
    ];
    expect(lassoSelect(ids, coords, SQUARE)).toEqual(["a", "b", "d"]);
  });

  it("equals the oracle over random layouts and lassos", () => {
    let seed = 23;
    const rand = () => {
      seed = (seed * 1103515245 + 12345) % 2 ** 31;
      return seed / 2 ** 31;
    };
    for (let round = 0; round < 20; round++) {
      const ids = Array.from({ length: 40 }, (_, i) => `e${i}`);
      const coords: Point[] = ids.map(() => [rand() * 10, rand() * 10]);
      const polygon: Point[] = Array.from({ length: 6 }, (_, k) => {
        const angle = (k / 6) * 2 * Math.PI;
        const radius = 2 + rand() * 3.5;
        return [5 + radius * Math.cos(angle), 5 + radius * Math.sin(angle)];
      });
      const expected = ids.filter((_, i) => oracleInside(coords[i], polygon));
      expect(lassoSelect(ids, coords, polygon)).toEqual(expected);
    }
  });
});
