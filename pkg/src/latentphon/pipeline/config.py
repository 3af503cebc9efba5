"""Experiment configuration: one JSON-serializable object drives every stage.

The global seed propagates to corpus synthesis, training, generation,
sampling for probes, sweeps, and progression, so a config fully determines
every reported number (given a fixed thread count).
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..gan.model import NetConfig
from ..synth import SynthesisSpec

OUT_ROOT_ENV = "LATENTPHON_OUT"


def default_out_root() -> Path:
    return Path(os.environ.get(OUT_ROOT_ENV, "runs"))


@dataclass
class ExperimentConfig:
    out_dir: str = "runs/experiment"
    seed: int = 0
    threads: int = 2

    # corpus synthesis
    sample_rate: int = 8000
    window_samples: int = 4096
    duration_scale: float = 0.55

    # network / training (output length is tied to window_samples)
    net: dict = field(default_factory=dict)
    train_steps: int = 2400
    checkpoint_steps: list[int] = field(default_factory=list)

    # analysis
    generation_count: int = 500
    extrapolation_value: float = 4.5
    extrapolation_n: int = 100
    sweep_sets: int = 60
    sweep_values: list[float] = field(default_factory=lambda: [float(v) for v in range(-6, 7)])
    sweep_fixed_magnitude: float = 2.5
    progression_count: int = 12

    def __post_init__(self):
        if not self.checkpoint_steps:
            q = max(self.train_steps // 4, 1)
            self.checkpoint_steps = [q, 2 * q, 3 * q, self.train_steps]
        self.checkpoint_steps = sorted(
            {min(s, self.train_steps) for s in self.checkpoint_steps}
        )

    def synthesis_spec(self) -> SynthesisSpec:
        return SynthesisSpec(
            sample_rate=self.sample_rate,
            total_samples=self.window_samples,
            duration_scale=self.duration_scale,
        )

    def net_config(self) -> NetConfig:
        kwargs = dict(self.net)
        kwargs.setdefault("latent_dim", 16)
        kwargs.setdefault("model_scale", 12)
        kwargs.setdefault("num_layers", 4)
        kwargs.setdefault("batch_size", 32)
        kwargs.setdefault("d_updates_per_g", 2)
        kwargs.setdefault("learning_rate", 2e-4)
        kwargs["output_samples"] = self.window_samples
        kwargs["seed"] = self.seed
        return NetConfig(**kwargs)

    # --- presets ---------------------------------------------------------------

    @classmethod
    def desk(cls, out_dir: str | Path, seed: int = 0) -> "ExperimentConfig":
        """CPU-feasible preset used by the acceptance suite.

        Latent width 16 and a quarter-width 4-layer net keep a multi-thousand
        step run inside a desktop hour while the prefix/frontness coordinates
        still discretize enough to probe.
        """
        return cls(
            out_dir=str(out_dir),
            seed=seed,
            generation_count=200,
            train_steps=4000,
            checkpoint_steps=[1000, 2000, 3000, 4000],
        )

    @classmethod
    def micro(cls, out_dir: str | Path, seed: int = 0) -> "ExperimentConfig":
        """Minutes-scale preset exercising every stage end to end."""
        return cls(
            out_dir=str(out_dir),
            seed=seed,
            net=dict(model_scale=8, batch_size=16, d_updates_per_g=1),
            train_steps=30,
            checkpoint_steps=[10, 20, 30],
            generation_count=24,
            extrapolation_n=12,
            sweep_sets=4,
            sweep_values=[-2.0, 0.0, 2.0],
            progression_count=4,
        )

    @classmethod
    def paper_scale(cls, out_dir: str | Path, seed: int = 0) -> "ExperimentConfig":
        """The published regime: 16 kHz audio, full width, 20990 steps.

        Documented for completeness; impractical without serious hardware.
        """
        return cls(
            out_dir=str(out_dir),
            seed=seed,
            sample_rate=16000,
            window_samples=16384,
            duration_scale=1.0,
            net=dict(model_scale=64, num_layers=5, batch_size=64, d_updates_per_g=5),
            train_steps=20990,
            checkpoint_steps=[7453, 9740, 14900, 20990],
            generation_count=500,
        )

    # --- persistence -----------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        return cls(**json.loads(Path(path).read_text()))
