"""Deterministic generation from loaded checkpoints."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import torch

from .train import Checkpoint


def generator_forward(ckpt: Checkpoint, z: np.ndarray) -> np.ndarray:
    """Waveforms (n, output_samples) in [-1, 1] for latent rows z (n, dim)."""
    z = np.atleast_2d(np.asarray(z, dtype=np.float64))
    if z.shape[1] != ckpt.config.latent_dim:
        raise ValueError(
            f"latent dimension {z.shape[1]} != config {ckpt.config.latent_dim}"
        )
    if not np.all(np.isfinite(z)):
        raise ValueError("latent values must be finite")
    g = ckpt.generator
    g.eval()
    out = []
    with torch.no_grad():
        for s in range(0, z.shape[0], 64):
            batch = torch.from_numpy(z[s : s + 64]).to(torch.float32)
            out.append(g(batch).squeeze(1).numpy())
    waves = np.concatenate(out, axis=0) if out else np.zeros((0, ckpt.config.output_samples))
    return np.clip(waves, -1.0, 1.0)


def generate_batch(
    ckpt: Checkpoint,
    zs: np.ndarray,
    out_dir: str | Path,
    sample_rate: int,
    prefix: str = "gen",
) -> list[dict]:
    """One WAV plus one manifest row (with the full latent vector) per z.

    I/O failures are recorded per item; the batch continues. The manifest is
    written as JSON lines next to the WAVs.
    """
    from ..audio import write_wav

    out_dir = Path(out_dir)
    (out_dir / "wav").mkdir(parents=True, exist_ok=True)
    zs = np.atleast_2d(np.asarray(zs, dtype=np.float64))
    rows: list[dict] = []
    if zs.shape[0] == 0 or zs.size == 0:
        (out_dir / "manifest.jsonl").write_text("")
        return rows
    waves = generator_forward(ckpt, zs)
    with open(out_dir / "manifest.jsonl", "w") as fh:
        for i, (z, w) in enumerate(zip(zs, waves)):
            rel = f"wav/{prefix}{i:05d}.wav"
            row = {
                "id": f"{prefix}{i:05d}",
                "wav": rel,
                "step": ckpt.step,
                "config_hash": ckpt.config_hash,
                "z": [round(float(v), 10) for v in z],
            }
            try:
                write_wav(out_dir / rel, w, sample_rate)
            except OSError as exc:
                row["error"] = str(exc)
            rows.append(row)
            fh.write(json.dumps(row) + "\n")
    return rows


def read_generation_manifest(out_dir: str | Path) -> list[dict]:
    path = Path(out_dir) / "manifest.jsonl"
    if not path.exists():
        return []
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]
