/** Rendering helpers. Pure numeric mapping is separated from canvas work so
 * it can be unit-tested; annotations and spectrogram values are displayed
 * exactly as the service returned them. */

import { Annotation, SpectrogramGrid } from "./api.js";

/** Map a magnitude grid to 0..255 intensity on a dB scale. */
export function magnitudeToIntensity(
  values: number[][],
  floorDb = -70,
): Uint8ClampedArray {
  const rows = values.length;
  const cols = rows ? values[0].length : 0;
  let peak = 1e-12;
  for (const row of values) for (const v of row) peak = Math.max(peak, v);
  const out = new Uint8ClampedArray(rows * cols);
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      const db = 20 * Math.log10((values[r][c] + 1e-12) / peak);
      out[r * cols + c] = Math.round((255 * (db - floorDb)) / -floorDb);
    }
  }
  return out;
}

export interface Badge {
  label: string;
  kind: "ok" | "warn" | "info" | "muted";
}

export function annotationBadges(a: Annotation): Badge[] {
  if (!a.analyzable) return [{ label: "unanalyzable", kind: "muted" }];
  const badges: Badge[] = [];
  badges.push(
    a.prefixed
      ? { label: `prefixed (${a.prefix_shape})`, kind: "ok" }
      : { label: "bare", kind: "info" },
  );
  if (a.prefix_vowel_front != null) {
    badges.push({ label: `prefix V: ${a.prefix_vowel_front ? "front" : "back"}`, kind: "info" });
  }
  if (a.v2_front != null) {
    badges.push({ label: `V2: ${a.v2_front ? "front" : "back"}`, kind: "info" });
  }
  if (a.c1_manner) {
    const voice = a.c1_voiced == null ? "" : a.c1_voiced ? " voiced" : " voiceless";
    badges.push({ label: `C1: ${a.c1_manner}${voice}`, kind: "info" });
  }
  if (a.harmonious != null) {
    badges.push(
      a.harmonious
        ? { label: "harmonious", kind: "ok" }
        : { label: "disharmonious", kind: "warn" },
    );
  }
  return badges;
}

export function drawSpectrogram(canvas: HTMLCanvasElement, grid: SpectrogramGrid): void {
  const rows = grid.freqs.length;
  const cols = grid.times.length;
  if (!rows || !cols) return;
  const ctx = canvas.getContext("2d")!;
  const img = ctx.createImageData(cols, rows);
  const intensity = magnitudeToIntensity(grid.values);
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      const v = intensity[r * cols + c];
      // low frequencies at the bottom
      const px = ((rows - 1 - r) * cols + c) * 4;
      img.data[px] = v;
      img.data[px + 1] = Math.round(v * 0.55);
      img.data[px + 2] = Math.round(80 + v * 0.35);
      img.data[px + 3] = 255;
    }
  }
  const off = new OffscreenCanvas(cols, rows);
  off.getContext("2d")!.putImageData(img, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.drawImage(off, 0, 0, canvas.width, canvas.height);
}

export function drawWaveform(canvas: HTMLCanvasElement, preview: [number, number][]): void {
  const ctx = canvas.getContext("2d")!;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#4da3ff";
  const n = preview.length;
  for (let i = 0; i < n; i++) {
    const [lo, hi] = preview[i];
    const x = (i / n) * width;
    const y0 = ((1 - hi) / 2) * height;
    const y1 = ((1 - lo) / 2) * height;
    ctx.fillRect(x, y0, Math.max(width / n - 0.5, 1), Math.max(y1 - y0, 1));
  }
}

export function audioUrlFromBase64(b64: string): string {
  return `data:audio/wav;base64,${b64}`;
}
