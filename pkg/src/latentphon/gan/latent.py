"""Latent vectors: uniform(-1,1) draws plus coordinate manipulation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SAMPLED = "sampled"
MANIPULATED = "manipulated"


@dataclass
class LatentVector:
    values: np.ndarray
    provenance: str = SAMPLED

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1:
            raise ValueError("latent vector must be 1-D")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("latent vector must be finite")
        if self.provenance == SAMPLED and np.any(np.abs(self.values) >= 1.0):
            raise ValueError("sampled vectors lie strictly inside (-1, 1)")

    def with_overrides(self, overrides: dict[int, float]) -> "LatentVector":
        vals = self.values.copy()
        for idx, v in overrides.items():
            if not 0 <= int(idx) < len(vals):
                raise IndexError(f"latent index {idx} out of range")
            if not np.isfinite(v):
                raise ValueError(f"override for coordinate {idx} is not finite")
            vals[int(idx)] = float(v)
        return LatentVector(vals, provenance=MANIPULATED)


def sample_latent(n: int, dim: int = 100, seed: int | None = None) -> np.ndarray:
    """(n, dim) matrix of i.i.d. uniform(-1, 1) draws, deterministic per seed."""
    if n < 1:
        raise ValueError("need at least one vector")
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 1.0, size=(n, dim))
