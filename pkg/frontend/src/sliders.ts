/** Slider-panel ordering: probe-ranked coordinates first, magnitudes shown,
 * the dominant variable badged with its drop ratio. Pure logic, no DOM. */

import { ProbeReport } from "./api.js";

export const SLIDER_MIN = -6;
export const SLIDER_MAX = 6;
export const TRAINING_MIN = -1;
export const TRAINING_MAX = 1;

export interface SliderSpec {
  index: number;
  pinned: boolean;
  magnitude: number | null;
  responses: string[]; // which probe responses rank this variable on top
  badge: string | null; // e.g. "drop x12.3"
}

export function sliderOrder(probes: ProbeReport | null, latentDim: number): SliderSpec[] {
  const specs = new Map<number, SliderSpec>();
  const order: number[] = [];

  if (probes) {
    for (const [resp, entry] of Object.entries(probes.responses ?? {})) {
      if (entry.skipped || entry.top_variable == null) continue;
      const idx = entry.top_variable;
      const mag = entry.coefficients ? Math.abs(entry.coefficients[idx]) : null;
      const existing = specs.get(idx);
      if (existing) {
        existing.responses.push(resp);
        if (existing.magnitude == null) existing.magnitude = mag;
      } else {
        specs.set(idx, {
          index: idx,
          pinned: true,
          magnitude: mag,
          responses: [resp],
          badge:
            entry.significant_drop && entry.drop_ratio
              ? `drop x${round1(entry.drop_ratio)}`
              : null,
        });
        order.push(idx);
      }
    }
  }

  for (let i = 0; i < latentDim; i++) {
    if (!specs.has(i)) {
      specs.set(i, { index: i, pinned: false, magnitude: null, responses: [], badge: null });
      order.push(i);
    }
  }
  return order.map((i) => specs.get(i)!);
}

function round1(x: number): string {
  return Number.isFinite(x) ? (Math.round(x * 10) / 10).toString() : "inf";
}

/** Clamp a slider move into [-6, 6]; free-text entry may exceed with a warning. */
export function normalizeValue(
  raw: number,
  fromFreeText = false,
): { value: number; warning: string | null } {
  if (!Number.isFinite(raw)) return { value: 0, warning: "value must be finite" };
  if (raw < SLIDER_MIN || raw > SLIDER_MAX) {
    if (fromFreeText) {
      return {
        value: raw,
        warning: `value ${raw} is outside the +/-6 probe range; generation may degrade`,
      };
    }
    return { value: Math.min(Math.max(raw, SLIDER_MIN), SLIDER_MAX), warning: null };
  }
  return { value: raw, warning: null };
}

export function inTrainingBand(value: number): boolean {
  return value > TRAINING_MIN && value < TRAINING_MAX;
}
