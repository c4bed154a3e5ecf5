/** Greedy interval partitioning for the composer timeline. */

export interface LifespanBar {
  composer_id: string;
  birth_year: number;
  death_year: number;
}

export interface TimelineLane extends LifespanBar {
  lane_index: number;
}

/**
 * Assign each composer to the lowest-index lane whose last bar ends before
 * this composer's birth, so bars within one lane never overlap. Input is
 * processed in birth-year order (ties by id for determinism); greedy
 * placement on sorted input uses the minimal number of lanes.
 */
export function assignLanes(composers: LifespanBar[]): TimelineLane[] {
  const sorted = [...composers].sort(
    (a, b) =>
      a.birth_year - b.birth_year || a.composer_id.localeCompare(b.composer_id),
  );
  const laneEnds: number[] = [];
  const lanes: TimelineLane[] = [];
  for (const composer of sorted) {
    let lane = laneEnds.findIndex((end) => end < composer.birth_year);
    if (lane === -1) {
      lane = laneEnds.length;
      laneEnds.push(composer.death_year);
    } else {
      laneEnds[lane] = composer.death_year;
    }
    lanes.push({ ...composer, lane_index: lane });
  }
  return lanes;
}

export function laneCount(lanes: TimelineLane[]): number {
  return lanes.reduce((max, lane) => Math.max(max, lane.lane_index + 1), 0);
}
