import { describe, expect, it } from "vitest";

import { Annotation } from "./api.js";
import { annotationBadges, audioUrlFromBase64, magnitudeToIntensity } from "./render.js";

function ann(overrides: Partial<Annotation>): Annotation {
  return {
    analyzable: true,
    prefixed: false,
    prefix_shape: "none",
    prefix_vowel_front: null,
    v2_front: null,
    c1_voiced: null,
    c1_manner: null,
    harmonious: null,
    confidence: {},
    ...overrides,
  };
}

describe("annotationBadges", () => {
  it("shows only an unanalyzable badge for failed parses", () => {
    const b = annotationBadges(ann({ analyzable: false }));
    expect(b).toEqual([{ label: "unanalyzable", kind: "muted" }]);
  });

  it("renders the full prefixed story", () => {
    const b = annotationBadges(
      ann({
        prefixed: true,
        prefix_shape: "VN",
        prefix_vowel_front: false,
        v2_front: false,
        c1_manner: "stop",
        c1_voiced: false,
        harmonious: true,
      }),
    );
    const labels = b.map((x) => x.label);
    expect(labels).toContain("prefixed (VN)");
    expect(labels).toContain("prefix V: back");
    expect(labels).toContain("V2: back");
    expect(labels).toContain("C1: stop voiceless");
    expect(labels).toContain("harmonious");
  });

  it("flags disharmony as a warning", () => {
    const b = annotationBadges(
      ann({ prefixed: true, prefix_vowel_front: true, v2_front: false, harmonious: false }),
    );
    expect(b.find((x) => x.label === "disharmonious")?.kind).toBe("warn");
  });
});

describe("magnitudeToIntensity", () => {
  it("maps the peak to 255 and the floor to 0", () => {
    const grid = [
      [1.0, 0.001],
      [0.0000001, 0.1],
    ];
    const px = magnitudeToIntensity(grid, -60);
    expect(px[0]).toBe(255);
    expect(px[2]).toBe(0);
    expect(px[3]).toBeGreaterThan(px[1]);
  });

  it("handles empty grids", () => {
    expect(magnitudeToIntensity([]).length).toBe(0);
  });
});

describe("audioUrlFromBase64", () => {
  it("builds a playable data url", () => {
    expect(audioUrlFromBase64("UklGRg==")).toBe("data:audio/wav;base64,UklGRg==");
  });
});
