import { describe, expect, it } from "vitest";

import { ProbeReport } from "./api.js";
import { inTrainingBand, normalizeValue, sliderOrder } from "./sliders.js";

const probes: ProbeReport = {
  responses: {
    prefix: {
      top_variable: 16,
      direction: -1,
      drop_ratio: 12.3,
      significant_drop: true,
      coefficients: Array.from({ length: 100 }, (_, i) => (i === 16 ? -1.8 : 0.01)),
    },
    front_v2: {
      top_variable: 17,
      direction: -1,
      drop_ratio: 6.0,
      significant_drop: true,
      coefficients: Array.from({ length: 100 }, (_, i) => (i === 17 ? -1.1 : 0.02)),
    },
    back_v2: { skipped: "single class" },
  },
};

describe("sliderOrder", () => {
  it("pins ranked variables first with badges and magnitudes", () => {
    const specs = sliderOrder(probes, 100);
    expect(specs.length).toBe(100);
    expect(specs[0].index).toBe(16);
    expect(specs[0].pinned).toBe(true);
    expect(specs[0].badge).toMatch(/drop x12.3/);
    expect(specs[0].magnitude).toBeCloseTo(1.8);
    expect(specs[1].index).toBe(17);
    expect(specs.slice(2).every((s) => !s.pinned)).toBe(true);
  });

  it("falls back to a plain grid without rankings", () => {
    const specs = sliderOrder(null, 24);
    expect(specs.length).toBe(24);
    expect(specs.map((s) => s.index)).toEqual([...Array(24).keys()]);
    expect(specs.every((s) => !s.pinned && s.badge === null)).toBe(true);
  });

  it("merges a variable ranked by two responses", () => {
    const twice: ProbeReport = {
      responses: {
        a: { top_variable: 5, coefficients: [] },
        b: { top_variable: 5, coefficients: [] },
      },
    };
    const specs = sliderOrder(twice, 10);
    expect(specs[0].index).toBe(5);
    expect(specs[0].responses).toEqual(["a", "b"]);
  });
});

describe("normalizeValue", () => {
  it("clamps slider moves to the probe range", () => {
    expect(normalizeValue(9, false)).toEqual({ value: 6, warning: null });
    expect(normalizeValue(-9, false)).toEqual({ value: -6, warning: null });
  });

  it("lets free text exceed the range with a warning", () => {
    const { value, warning } = normalizeValue(8.5, true);
    expect(value).toBe(8.5);
    expect(warning).toMatch(/outside/);
  });

  it("marks the training band", () => {
    expect(inTrainingBand(0.5)).toBe(true);
    expect(inTrainingBand(-2.5)).toBe(false);
  });
});
