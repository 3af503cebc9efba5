"""Generator and critic: mirrored stacks of stride-4 width-25 1-D convolutions.

The generator maps a latent vector through a dense layer to a short wide
feature map and upsamples with transposed convolutions to a tanh-bounded
waveform. The critic mirrors it with strided convolutions, LeakyReLU, and
phase shuffle (random +/-n shift after each layer) so it cannot key on
absolute sample phase.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, asdict, field

import torch
import torch.nn as nn
import torch.nn.functional as F


@dataclass(frozen=True)
class NetConfig:
    latent_dim: int = 100
    model_scale: int = 64  # channel multiplier
    output_samples: int = 16384
    kernel_size: int = 25
    stride: int = 4
    num_layers: int = 5
    d_updates_per_g: int = 5
    gp_weight: float = 10.0
    learning_rate: float = 1e-4
    beta1: float = 0.5
    beta2: float = 0.9
    batch_size: int = 64
    phase_shuffle: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.output_samples != self.stride**self.num_layers * self.initial_width:
            raise ValueError(
                f"output_samples {self.output_samples} != "
                f"stride^layers * initial width"
            )
        if self.batch_size < 2:
            raise ValueError("gradient penalty interpolates pairs: batch_size >= 2")

    @property
    def initial_width(self) -> int:
        w = self.output_samples
        for _ in range(self.num_layers):
            if w % self.stride:
                raise ValueError("output_samples not divisible by stride^num_layers")
            w //= self.stride
        return w

    def channels(self) -> list[int]:
        """Channel counts per generator layer boundary, wide to 1."""
        return [self.model_scale * 2 ** (self.num_layers - 1 - i) for i in range(self.num_layers)] + [1]

    def config_hash(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @classmethod
    def desk(cls, seed: int = 0, latent_dim: int = 100) -> "NetConfig":
        """Reduced preset sized for CPU runs: 4096 samples, 4 layers, 1/4 width."""
        return cls(
            latent_dim=latent_dim,
            model_scale=16,
            output_samples=4096,
            num_layers=4,
            seed=seed,
        )

    @classmethod
    def tiny(cls, seed: int = 0) -> "NetConfig":
        """Gradient-check scale: latent 4, 64-sample output."""
        return cls(
            latent_dim=4,
            model_scale=2,
            output_samples=64,
            num_layers=2,
            kernel_size=9,
            batch_size=4,
            seed=seed,
        )


class Generator(nn.Module):
    def __init__(self, cfg: NetConfig):
        super().__init__()
        self.cfg = cfg
        ch = cfg.channels()
        self.fc = nn.Linear(cfg.latent_dim, cfg.initial_width * ch[0])
        pad = (cfg.kernel_size - 1) // 2
        out_pad = cfg.stride - 1
        self.deconvs = nn.ModuleList(
            nn.ConvTranspose1d(
                ch[i], ch[i + 1], cfg.kernel_size, stride=cfg.stride,
                padding=pad, output_padding=out_pad,
            )
            for i in range(cfg.num_layers)
        )

    def forward(self, z: torch.Tensor) -> torch.Tensor:
        ch0 = self.cfg.channels()[0]
        x = F.relu(self.fc(z)).view(-1, ch0, self.cfg.initial_width)
        for i, layer in enumerate(self.deconvs):
            x = layer(x)
            if i < len(self.deconvs) - 1:
                x = F.relu(x)
        return torch.tanh(x)


class PhaseShuffle(nn.Module):
    """Random per-example time shift in [-n, n] with reflection padding."""

    def __init__(self, shift: int):
        super().__init__()
        self.shift = shift

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if self.shift == 0 or not self.training:
            return x
        shifts = torch.randint(-self.shift, self.shift + 1, (x.size(0),))
        out = torch.empty_like(x)
        for k in range(x.size(0)):
            s = int(shifts[k])
            if s == 0:
                out[k] = x[k]
            elif s > 0:
                out[k] = F.pad(x[k : k + 1], (s, 0), mode="reflect")[0, :, : x.size(2)]
            else:
                out[k] = F.pad(x[k : k + 1], (0, -s), mode="reflect")[0, :, -x.size(2):]
        return out


class Discriminator(nn.Module):
    def __init__(self, cfg: NetConfig):
        super().__init__()
        self.cfg = cfg
        ch = list(reversed(cfg.channels()))  # 1 ... widest
        pad = (cfg.kernel_size - 1) // 2
        self.convs = nn.ModuleList(
            nn.Conv1d(ch[i], ch[i + 1], cfg.kernel_size, stride=cfg.stride, padding=pad)
            for i in range(cfg.num_layers)
        )
        self.shuffle = PhaseShuffle(cfg.phase_shuffle)
        self.fc = nn.Linear(ch[-1] * cfg.initial_width, 1)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        for i, layer in enumerate(self.convs):
            x = F.leaky_relu(layer(x), 0.2)
            if i < len(self.convs) - 1:
                x = self.shuffle(x)
        return self.fc(x.flatten(1)).squeeze(-1)
