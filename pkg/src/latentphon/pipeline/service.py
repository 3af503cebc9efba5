"""JSON-over-HTTP generation service backing the latent-space explorer.

Endpoints:
  GET  /health              liveness probe
  GET  /checkpoints         available training steps + config hash
  GET  /probes              latent-variable rankings from the probe stage
  POST /generate            audio + spectrogram + annotation for one latent

Generation is deterministic: a full latent vector, or a base seed plus
coordinate overrides, always yields byte-identical audio. Checkpoints are
immutable; requests never mutate service state.
"""

from __future__ import annotations

import base64
import json
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from ..annotate import Annotator, compute_spectrogram
from ..audio import wav_bytes
from ..gan import generator_forward, load_checkpoint, sample_latent
from ..gan.train import list_checkpoints


class GenerateRequest(BaseModel):
    step: int | None = None  # default: latest checkpoint
    z: list[float] | None = None
    seed: int = 0
    overrides: dict[str, float] = Field(default_factory=dict)
    max_hz: float | None = 4000.0


def _frontend_root() -> Path | None:
    # repo layout: src/latentphon/pipeline/service.py -> <root>/frontend
    candidate = Path(__file__).resolve().parents[3] / "frontend"
    if (candidate / "index.html").exists() and (candidate / "dist").exists():
        return candidate
    return None


def build_app(run_dir: str | Path, sample_rate: int | None = None) -> FastAPI:
    run_dir = Path(run_dir)
    ckpt_dir = run_dir / "checkpoints"
    if not list_checkpoints(ckpt_dir):
        raise FileNotFoundError(f"no checkpoints under {ckpt_dir}")
    if sample_rate is None:
        cfg_path = run_dir / "run_manifest.json"
        sample_rate = 8000
        if cfg_path.exists():
            sample_rate = json.loads(cfg_path.read_text())["config"].get("sample_rate", 8000)

    app = FastAPI(title="latentphon generation service")
    cache: dict[int, object] = {}
    lock = threading.Lock()
    annotator = Annotator(sample_rate)

    def checkpoints():
        return {load_checkpoint_step(p): p for p in list_checkpoints(ckpt_dir)}

    def load_checkpoint_step(path: Path) -> int:
        return int(path.stem.replace("step", ""))

    def get_ckpt(step: int | None):
        table = checkpoints()
        if step is None:
            step = max(table)
        if step not in table:
            raise HTTPException(status_code=404, detail=f"no checkpoint at step {step}")
        with lock:
            if step not in cache:
                cache[step] = load_checkpoint(table[step])
        return cache[step]

    @app.get("/health")
    def health():
        return {"ok": True, "sample_rate": sample_rate}

    @app.get("/checkpoints")
    def list_ckpts():
        out = []
        for step, path in sorted(checkpoints().items()):
            ck = get_ckpt(step)
            out.append(
                {
                    "step": step,
                    "config_hash": ck.config_hash,
                    "latent_dim": ck.config.latent_dim,
                }
            )
        return out

    @app.get("/probes")
    def probes():
        p = run_dir / "probe.json"
        if not p.exists():
            raise HTTPException(status_code=404, detail="probe stage has not run")
        return json.loads(p.read_text())

    @app.post("/generate")
    def generate(req: GenerateRequest):
        ck = get_ckpt(req.step)
        dim = ck.config.latent_dim
        if req.z is not None:
            z = np.asarray(req.z, dtype=np.float64)
            if z.shape != (dim,):
                raise HTTPException(
                    status_code=422,
                    detail=f"latent vector must have length {dim}, got {len(req.z)}",
                )
        else:
            z = sample_latent(1, dim=dim, seed=req.seed)[0]
        for key, val in req.overrides.items():
            try:
                idx = int(key)
            except ValueError:
                raise HTTPException(status_code=422, detail=f"bad override index {key!r}")
            if not 0 <= idx < dim:
                raise HTTPException(status_code=422, detail=f"override index {idx} out of range")
            if not np.isfinite(val):
                raise HTTPException(status_code=422, detail=f"override {idx} is not finite")
            z[idx] = float(val)
        if not np.all(np.isfinite(z)):
            raise HTTPException(status_code=422, detail="latent vector must be finite")

        wave = generator_forward(ck, z[None, :])[0]
        rec = annotator.annotate(wave)
        grid = compute_spectrogram(wave, sample_rate, window_ms=5.0, max_hz=req.max_hz)
        # compact min/max envelope for instant waveform drawing client-side
        n_bins = 256
        trimmed = wave[: len(wave) // n_bins * n_bins].reshape(n_bins, -1)
        preview = np.stack([trimmed.min(axis=1), trimmed.max(axis=1)], axis=1)
        return {
            "step": ck.step,
            "config_hash": ck.config_hash,
            "z": [float(v) for v in z],
            "sample_rate": sample_rate,
            "audio_wav_base64": base64.b64encode(wav_bytes(wave, sample_rate)).decode(),
            "annotation": rec.to_dict(),
            "spectrogram": {
                "values": np.round(grid.values, 6).tolist(),
                "times": grid.times.tolist(),
                "freqs": grid.freqs.tolist(),
            },
            "waveform_preview": np.round(preview, 4).tolist(),
        }

    front = _frontend_root()
    if front is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=front, html=True), name="explorer")

    return app


def serve(run_dir: str | Path, host: str = "127.0.0.1", port: int = 8000):
    import uvicorn

    uvicorn.run(build_app(run_dir), host=host, port=port)
