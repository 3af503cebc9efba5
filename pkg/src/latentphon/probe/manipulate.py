"""Generative verification: coordinate forcing, interpolation sweeps, and
constant-latent progression across checkpoints.

All three take a `generate_fn(z_matrix) -> waveforms` plus an
`annotate_fn(waveform) -> AnnotationRecord`, so a stub generator can stand in
for a trained checkpoint in tests; `from_checkpoint` adapts a real one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..records import AnnotationRecord
from .lasso import LassoFit


def from_checkpoint(ckpt):
    from ..gan.generate import generator_forward

    return lambda z: generator_forward(ckpt, z)


def wilson_interval(successes: int, n: int, z: float = 1.96) -> tuple[float, float]:
    if n == 0:
        return (0.0, 1.0)
    phat = successes / n
    denom = 1 + z**2 / n
    center = (phat + z**2 / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z**2 / (4 * n**2)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass
class ManipulationResult:
    target_index: int
    value: float
    n: int
    analyzable: int
    positives: int
    rate: float
    ci_low: float
    ci_high: float
    unreliable: bool
    records: list[AnnotationRecord] = field(default_factory=list)


def set_and_generate(
    generate_fn,
    annotate_fn,
    target_index: int,
    value: float,
    n: int = 100,
    latent_dim: int = 100,
    seed: int = 0,
    label=lambda rec: rec.prefixed,
) -> ManipulationResult:
    """Force one latent coordinate and measure the positive-class rate.

    Values well outside the (-1,1) training range are the point; the result
    is flagged unreliable when more than half the outputs resist annotation.
    """
    if not np.isfinite(value):
        raise ValueError("target value must be finite")
    rng = np.random.default_rng(seed)
    zs = rng.uniform(-1.0, 1.0, size=(n, latent_dim))
    zs[:, target_index] = value
    waves = generate_fn(zs)
    records = [annotate_fn(w) for w in waves]
    usable = [r for r in records if r.analyzable]
    positives = sum(1 for r in usable if label(r))
    rate = positives / len(usable) if usable else float("nan")
    lo, hi = wilson_interval(positives, len(usable))
    return ManipulationResult(
        target_index=target_index,
        value=value,
        n=n,
        analyzable=len(usable),
        positives=positives,
        rate=rate,
        ci_low=lo,
        ci_high=hi,
        unreliable=len(usable) < n / 2,
        records=records,
    )


@dataclass
class Trajectory:
    set_id: int
    swept_index: int
    fixed: dict[int, float]
    values: list[float]
    records: list[AnnotationRecord]
    base_z: np.ndarray
    z_rows: np.ndarray  # (len(values), latent_dim), for bookkeeping audits

    def to_dict(self) -> dict:
        return {
            "set_id": self.set_id,
            "swept_index": self.swept_index,
            "fixed": {str(k): v for k, v in self.fixed.items()},
            "values": list(self.values),
            "records": [r.to_dict() for r in self.records],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Trajectory":
        return cls(
            set_id=d["set_id"],
            swept_index=d["swept_index"],
            fixed={int(k): float(v) for k, v in d["fixed"].items()},
            values=[float(v) for v in d["values"]],
            records=[AnnotationRecord.from_dict(r) for r in d["records"]],
            base_z=np.zeros(0),
            z_rows=np.zeros((0, 0)),
        )


def interpolate_sweep(
    generate_fn,
    annotate_fn,
    swept_index: int,
    fixed: dict[int, float] | None = None,
    values=None,
    n_sets: int = 60,
    latent_dim: int = 100,
    seed: int = 0,
) -> list[Trajectory]:
    """n_sets trajectories sweeping one coordinate over `values`.

    Non-swept, non-fixed coordinates are drawn uniform(-1,1) once per set and
    held constant across the sweep.
    """
    fixed = dict(fixed or {})
    if values is None:
        values = list(range(-6, 7))
    values = [float(v) for v in values]
    if swept_index in fixed:
        raise ValueError("swept coordinate cannot also be fixed")
    rng = np.random.default_rng(seed)
    out: list[Trajectory] = []
    for set_id in range(1, n_sets + 1):
        base = rng.uniform(-1.0, 1.0, size=latent_dim)
        for idx, v in fixed.items():
            base[int(idx)] = float(v)
        z_rows = np.tile(base, (len(values), 1))
        z_rows[:, swept_index] = values
        waves = generate_fn(z_rows)
        records = [annotate_fn(w) for w in waves]
        out.append(
            Trajectory(
                set_id=set_id,
                swept_index=swept_index,
                fixed=fixed,
                values=values,
                records=records,
                base_z=base,
                z_rows=z_rows,
            )
        )
    return out


@dataclass
class ProgressionDiff:
    z_index: int
    field: str
    step_from: int
    step_to: int
    value_from: object
    value_to: object


def progression_compare(
    z_matrix: np.ndarray,
    checkpoints: list,
    annotate_fn,
) -> tuple[np.ndarray, list[list[AnnotationRecord]], list[ProgressionDiff]]:
    """Generate each z at every checkpoint and log annotation changes.

    Returns (grid of waveforms [n_ckpt, n_z, samples], records per checkpoint,
    field-level diff log between consecutive checkpoints).
    """
    from ..gan.generate import generator_forward

    if len(checkpoints) < 1:
        raise ValueError("need at least one checkpoint")
    hashes = {c.config_hash for c in checkpoints}
    if len(hashes) > 1:
        raise ValueError("checkpoints come from different configs")
    grid = np.stack([generator_forward(c, z_matrix) for c in checkpoints])
    records = [[annotate_fn(w) for w in row] for row in grid]
    watched = ["analyzable", "prefixed", "prefix_shape", "prefix_vowel_front",
               "v2_front", "c1_voiced", "c1_manner", "harmonious"]
    diffs: list[ProgressionDiff] = []
    for zi in range(z_matrix.shape[0]):
        for a, b in zip(range(len(checkpoints) - 1), range(1, len(checkpoints))):
            ra, rb = records[a][zi], records[b][zi]
            for f in watched:
                if getattr(ra, f) != getattr(rb, f):
                    diffs.append(
                        ProgressionDiff(
                            z_index=zi,
                            field=f,
                            step_from=checkpoints[a].step,
                            step_to=checkpoints[b].step,
                            value_from=getattr(ra, f),
                            value_to=getattr(rb, f),
                        )
                    )
    return grid, records, diffs
