"""Training loop with step-indexed checkpoints and an append-only log.

A "step" is one generator update; each step runs d_updates_per_g critic
updates on shuffled minibatches first. Checkpoints are written at the steps
in the schedule (plus the final step) and carry the config hash and RNG
state, so generation from a reloaded checkpoint is reproducible on the same
platform and thread count.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from .losses import critic_loss, generator_loss
from .model import Discriminator, Generator, NetConfig


class TrainingAborted(RuntimeError):
    def __init__(self, message: str, last_checkpoint: Path | None):
        super().__init__(message)
        self.last_checkpoint = last_checkpoint


@dataclass
class Checkpoint:
    step: int
    config: NetConfig
    generator: Generator
    discriminator: Discriminator
    path: Path | None = None

    @property
    def config_hash(self) -> str:
        return self.config.config_hash()


def save_checkpoint(
    ckpt_dir: Path, step: int, cfg: NetConfig, g: Generator, d: Discriminator
) -> Path:
    ckpt_dir.mkdir(parents=True, exist_ok=True)
    path = ckpt_dir / f"step{step:07d}.pt"
    torch.save(
        {
            "step": step,
            "config": cfg.__dict__,
            "config_hash": cfg.config_hash(),
            "generator": g.state_dict(),
            "discriminator": d.state_dict(),
            "torch_rng": torch.get_rng_state(),
        },
        path,
    )
    return path


def load_checkpoint(path: str | Path) -> Checkpoint:
    blob = torch.load(path, map_location="cpu", weights_only=False)
    cfg = NetConfig(**blob["config"])
    if cfg.config_hash() != blob["config_hash"]:
        raise ValueError(f"{path}: config hash mismatch")
    g = Generator(cfg)
    g.load_state_dict(blob["generator"])
    g.eval()
    d = Discriminator(cfg)
    d.load_state_dict(blob["discriminator"])
    d.eval()
    return Checkpoint(blob["step"], cfg, g, d, Path(path))


def list_checkpoints(ckpt_dir: str | Path) -> list[Path]:
    return sorted(Path(ckpt_dir).glob("step*.pt"))


class _Batcher:
    """Shuffled minibatches, reshuffling each epoch; drops ragged tails."""

    def __init__(self, n: int, batch_size: int, rng: np.random.Generator):
        self.n, self.bs, self.rng = n, batch_size, rng
        self.order = rng.permutation(n)
        self.pos = 0

    def next_indices(self) -> np.ndarray:
        if self.bs > self.n:
            return self.rng.choice(self.n, size=self.bs, replace=True)
        if self.pos + self.bs > self.n:
            self.order = self.rng.permutation(self.n)
            self.pos = 0
        out = self.order[self.pos : self.pos + self.bs]
        self.pos += self.bs
        return out


def train(
    waveforms: np.ndarray,
    cfg: NetConfig,
    ckpt_dir: str | Path,
    total_steps: int,
    checkpoint_steps: list[int] | None = None,
    log_path: str | Path | None = None,
    num_threads: int | None = None,
    progress: bool = False,
) -> list[Path]:
    """Run WGAN-GP training; returns the checkpoint paths written.

    waveforms: (N, output_samples) float array in [-1, 1].
    """
    if waveforms.ndim != 2 or waveforms.shape[0] == 0:
        raise ValueError("need a non-empty (N, samples) training array")
    if waveforms.shape[1] != cfg.output_samples:
        raise ValueError(
            f"training samples have {waveforms.shape[1]} points, "
            f"config wants {cfg.output_samples}"
        )
    ckpt_dir = Path(ckpt_dir)
    schedule = sorted(set(checkpoint_steps or []) | {total_steps})

    if num_threads:
        torch.set_num_threads(num_threads)
    torch.manual_seed(cfg.seed)
    rng = np.random.default_rng(cfg.seed)

    g = Generator(cfg)
    d = Discriminator(cfg)
    g.train(), d.train()
    g_opt = torch.optim.Adam(g.parameters(), lr=cfg.learning_rate, betas=(cfg.beta1, cfg.beta2))
    d_opt = torch.optim.Adam(d.parameters(), lr=cfg.learning_rate, betas=(cfg.beta1, cfg.beta2))

    data = torch.from_numpy(np.asarray(waveforms, dtype=np.float32)).unsqueeze(1)
    batcher = _Batcher(data.size(0), cfg.batch_size, rng)

    log_fh = open(log_path, "a") if log_path else None
    written: list[Path] = []
    last_ckpt: Path | None = None
    t0 = time.time()
    try:
        for step in range(1, total_steps + 1):
            d_loss_val = w_val = gp_val = 0.0
            for _ in range(cfg.d_updates_per_g):
                real = data[batcher.next_indices()]
                z = torch.rand(cfg.batch_size, cfg.latent_dim) * 2.0 - 1.0
                with torch.no_grad():
                    fake = g(z)
                d_opt.zero_grad(set_to_none=True)
                loss_d, w_est, gp = critic_loss(d, real, fake, cfg.gp_weight)
                loss_d.backward()
                d_opt.step()
                d_loss_val = float(loss_d.detach())
                w_val, gp_val = float(w_est.detach()), float(gp.detach())

            z = torch.rand(cfg.batch_size, cfg.latent_dim) * 2.0 - 1.0
            g_opt.zero_grad(set_to_none=True)
            loss_g = generator_loss(d, g(z))
            loss_g.backward()
            g_opt.step()
            g_loss_val = float(loss_g.detach())

            if not all(np.isfinite([d_loss_val, g_loss_val, gp_val])):
                raise TrainingAborted(
                    f"non-finite loss at step {step}", last_ckpt
                )

            if log_fh:
                log_fh.write(
                    json.dumps(
                        {
                            "step": step,
                            "critic_loss": d_loss_val,
                            "generator_loss": g_loss_val,
                            "gradient_penalty": gp_val,
                            "wasserstein": w_val,
                            "elapsed_s": round(time.time() - t0, 3),
                        }
                    )
                    + "\n"
                )
                log_fh.flush()
            if progress and (step % 25 == 0 or step == 1):
                print(
                    f"step {step}/{total_steps} critic {d_loss_val:+.3f} "
                    f"gen {g_loss_val:+.3f} gp {gp_val:.3f} "
                    f"[{time.time() - t0:.0f}s]",
                    flush=True,
                )
            if step in schedule:
                last_ckpt = save_checkpoint(ckpt_dir, step, cfg, g, d)
                written.append(last_ckpt)
    finally:
        if log_fh:
            log_fh.close()
    return written
