import { describe, expect, it } from "vitest";

import { formatDelay, formatYear, humanizeMinutes } from "../src/format.js";
import { decadeTicks, makeLogScale, placeKnots } from "../src/chart.js";

describe("humanizeMinutes", () => {
  it.each([
    [0.5, "30 sec"],
    [5, "5.0 min"],
    [60, "1 hour"],
    [90, "1.5 hours"],
    [480, "1 work-day"],
    [2400, "1 work-week"],
    [4800, "2 work-weeks"],
    [10020, "1 work-month"],
    [100200, "10 work-months"],
  ])("%s minutes -> %s", (minutes, expected) => {
    expect(humanizeMinutes(minutes as number)).toBe(expected);
  });
});

describe("formatting", () => {
  it("renders missing dates as em dash", () => {
    expect(formatYear(null)).toBe("—");
    expect(formatYear(2033.46)).toBe("2033.5");
  });

  it("renders delays with two decimals", () => {
    expect(formatDelay(4.0829)).toBe("4.08 yr");
    expect(formatDelay(null)).toBe("not reached");
  });
});

describe("chart scales", () => {
  it("log scale round-trips through invert", () => {
    const { scale, invert } = makeLogScale(1, 1e6, 300, 0);
    for (const v of [1, 12, 345, 1e4, 9.9e5]) {
      expect(invert(scale(v))).toBeCloseTo(v, 6);
    }
  });

  it("decade ticks cover the domain", () => {
    expect(decadeTicks(5, 20000)).toEqual([10, 100, 1000, 10000]);
  });

  it("knot placement is monotone in value", () => {
    const { placements } = placeKnots([
      { year: 2025, value: 1e25 },
      { year: 2026, value: 1e26 },
      { year: 2027, value: 1e27 },
    ]);
    // larger values sit higher on the screen (smaller y)
    expect(placements[0]!.cy).toBeGreaterThan(placements[1]!.cy);
    expect(placements[1]!.cy).toBeGreaterThan(placements[2]!.cy);
  });

  it("drag inversion recovers the dragged value", () => {
    const knots = [
      { year: 2025, value: 1e25 },
      { year: 2026, value: 4e25 },
    ];
    const { placements, invertValue } = placeKnots(knots);
    expect(invertValue(placements[1]!.cy) / 4e25).toBeCloseTo(1, 9);
  });
});
