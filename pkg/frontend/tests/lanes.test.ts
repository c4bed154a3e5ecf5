import { describe, expect, it } from "vitest";

import { assignLanes, laneCount, type LifespanBar } from "../src/lanes.js";

function bar(id: string, birth: number, death: number): LifespanBar {
  return { composer_id: id, birth_year: birth, death_year: death };
}

describe("assignLanes", () => {
  it("keeps non-overlapping lifespans in a single lane", () => {
    const lanes = assignLanes([bar("a", 1600, 1650), bar("b", 1660, 1700)]);
    expect(lanes.map((l) => l.lane_index)).toEqual([0, 0]);
    expect(laneCount(lanes)).toBe(1);
  });

  it("puts fully overlapping lifespans in two lanes", () => {
    const lanes = assignLanes([bar("a", 1700, 1780), bar("b", 1720, 1760)]);
    expect(laneCount(lanes)).toBe(2);
    expect(lanes[0].lane_index).not.toBe(lanes[1].lane_index);
  });

  it("matches the hand simulation for five composers", () => {
    // Hand trace (sorted by birth):
    //  pachelbel 1653-1706 -> lane 0
    //  bach      1685-1750 -> overlaps lane 0 -> lane 1
    //  haydn     1732-1809 -> overlaps lane 1 (1750 !< 1732) -> lane 0? no:
    //    lane 0 ends 1706 < 1732 -> lane 0
    //  mozart    1756-1791 -> lane 0 ends 1809? no, haydn took lane 0
    //    lane 0 ends 1809, lane 1 ends 1750 < 1756 -> lane 1
    //  beethoven 1770-1827 -> lane 0 ends 1809, lane 1 ends 1791 -> lane 2
    const lanes = assignLanes([
      bar("pachelbel", 1653, 1706),
      bar("bach", 1685, 1750),
      bar("haydn", 1732, 1809),
      bar("mozart", 1756, 1791),
      bar("beethoven", 1770, 1827),
    ]);
    const byId = Object.fromEntries(lanes.map((l) => [l.composer_id, l.lane_index]));
    expect(byId).toEqual({
      pachelbel: 0,
      bach: 1,
      haydn: 0,
      mozart: 1,
      beethoven: 2,
    });
  });

  it("never overlaps bars within one lane", () => {
    const composers = [];
    let seed = 11;
    const rand = () => {
      seed = (seed * 1103515245 + 12345) % 2 ** 31;
      return seed / 2 ** 31;
    };
    for (let i = 0; i < 60; i++) {
      const birth = 1500 + Math.floor(rand() * 400);
      composers.push(bar(`c${i}`, birth, birth + 20 + Math.floor(rand() * 70)));
    }
    const lanes = assignLanes(composers);
    const byLane = new Map<number, typeof lanes>();
    for (const lane of lanes) {
      const list = byLane.get(lane.lane_index) ?? [];
      list.push(lane);
      byLane.set(lane.lane_index, list);
    }
    for (const list of byLane.values()) {
      list.sort((a, b) => a.birth_year - b.birth_year);
      for (let i = 1; i < list.length; i++) {
        expect(list[i - 1].death_year).toBeLessThan(list[i].birth_year);
      }
    }
  });

  it("uses the lowest-index available lane", () => {
    const lanes = assignLanes([
      bar("a", 1600, 1700),
      bar("b", 1650, 1680),
      bar("c", 1710, 1760), // both lanes free; must go to lane 0
    ]);
    const c = lanes.find((l) => l.composer_id === "c")!;
    expect(c.lane_index).toBe(0);
  });
});
