/** Explorer app: sliders steer latent coordinates, the service renders. */

import { Annotation, ProbeReport, ServiceClient, ServiceError } from "./api.js";
import { ExplorerSession } from "./session.js";
import {
  SLIDER_MAX,
  SLIDER_MIN,
  TRAINING_MAX,
  TRAINING_MIN,
  normalizeValue,
  sliderOrder,
} from "./sliders.js";
import {
  annotationBadges,
  audioUrlFromBase64,
  drawSpectrogram,
  drawWaveform,
} from "./render.js";

const client = new ServiceClient("");
const session = new ExplorerSession(client);

const el = (id: string) => document.getElementById(id)!;

async function init() {
  let probes: ProbeReport | null = null;
  let latentDim = 100;
  try {
    const cks = await client.checkpoints();
    latentDim = cks[cks.length - 1]?.latent_dim ?? 100;
    const sel = el("checkpoint") as HTMLSelectElement;
    for (const ck of cks) {
      const opt = document.createElement("option");
      opt.value = String(ck.step);
      opt.textContent = `step ${ck.step}`;
      sel.appendChild(opt);
    }
    sel.value = String(cks[cks.length - 1].step);
    sel.onchange = () => (session.checkpointStep = Number(sel.value));
    session.checkpointStep = cks[cks.length - 1].step;
  } catch (e) {
    el("status").textContent = `service unreachable: ${e}`;
    return;
  }
  try {
    probes = await client.probes();
  } catch {
    probes = null; // probe stage may not have run; plain slider grid then
  }
  buildSliders(probes, latentDim);

  (el("seed") as HTMLInputElement).onchange = (ev) => {
    session.baseSeed = Number((ev.target as HTMLInputElement).value) || 0;
  };
  el("generate").onclick = () => void generate();
  el("export").onclick = () => exportSweep();
  el("status").textContent = "ready";
}

function buildSliders(probes: ProbeReport | null, latentDim: number) {
  const panel = el("sliders");
  panel.innerHTML = "";
  for (const spec of sliderOrder(probes, latentDim)) {
    const row = document.createElement("div");
    row.className = "slider-row" + (spec.pinned ? " pinned" : "");
    const label = document.createElement("label");
    label.textContent =
      `z[${spec.index}]` +
      (spec.responses.length ? ` (${spec.responses.join(", ")})` : "");
    if (spec.badge) {
      const b = document.createElement("span");
      b.className = "badge";
      b.textContent = spec.badge;
      label.appendChild(b);
    }
    if (spec.magnitude != null) {
      const m = document.createElement("span");
      m.className = "mag";
      m.textContent = ` |coef|=${spec.magnitude.toFixed(2)}`;
      label.appendChild(m);
    }
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = String(SLIDER_MIN);
    slider.max = String(SLIDER_MAX);
    slider.step = "0.1";
    slider.value = "0";
    const num = document.createElement("input");
    num.type = "text";
    num.value = "0";
    num.size = 6;
    const band = document.createElement("span");
    band.className = "band";
    band.textContent = `training band ${TRAINING_MIN}..${TRAINING_MAX}`;

    const apply = (raw: number, fromText: boolean) => {
      const { value, warning } = normalizeValue(raw, fromText);
      session.setOverride(spec.index, value);
      slider.value = String(Math.min(Math.max(value, SLIDER_MIN), SLIDER_MAX));
      num.value = String(value);
      el("status").textContent = warning ?? "";
      row.classList.toggle("outside-training", Math.abs(value) >= 1);
    };
    slider.oninput = () => apply(Number(slider.value), false);
    num.onchange = () => apply(Number(num.value), true);

    row.append(label, slider, num, band);
    panel.appendChild(row);
  }
}

async function generate() {
  el("status").textContent = "generating...";
  try {
    const res = await session.generate();
    (el("audio") as HTMLAudioElement).src = audioUrlFromBase64(res.audio_wav_base64);
    drawWaveform(el("waveform") as HTMLCanvasElement, res.waveform_preview);
    drawSpectrogram(el("spectrogram") as HTMLCanvasElement, res.spectrogram);
    renderBadges(res.annotation);
    el("status").textContent = `step ${res.step}; history ${session.history.length}`;
  } catch (e) {
    // rejected request: show the error inline, session state unchanged
    el("status").textContent =
      e instanceof ServiceError ? e.message : `request failed: ${e}`;
  }
}

function renderBadges(a: Annotation) {
  const host = el("badges");
  host.innerHTML = "";
  for (const b of annotationBadges(a)) {
    const span = document.createElement("span");
    span.className = `badge badge-${b.kind}`;
    span.textContent = b.label;
    host.appendChild(span);
  }
}

function exportSweep() {
  try {
    const traj = session.exportTrajectory();
    const blob = new Blob([JSON.stringify(traj, null, 2)], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "trajectory.json";
    a.click();
    el("status").textContent = `exported ${traj.values.length}-point sweep of z[${traj.swept_index}]`;
  } catch (e) {
    el("status").textContent = `export: ${e}`;
  }
}

init();
