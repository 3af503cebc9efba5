"""The adversarial objective, verified: penalty closed forms and a toy run.

Run:  python3 demos/03_gan_training_math.py
"""

import tempfile

import numpy as np
import torch

from latentphon.gan import NetConfig, gradient_penalty, train

# ---- the gradient penalty has exact closed forms for linear critics -------------
class LinearCritic(torch.nn.Module):
    def __init__(self, w):
        super().__init__()
        self.w = torch.nn.Parameter(torch.as_tensor(w, dtype=torch.float64))

    def forward(self, x):
        return (x.flatten(1) * self.w).sum(dim=1)


w = torch.randn(64, dtype=torch.float64)
w /= w.norm()  # unit gradient everywhere -> zero penalty
real = torch.randn(8, 1, 64, dtype=torch.float64)
fake = torch.randn(8, 1, 64, dtype=torch.float64)
print("unit-gradient critic penalty:", float(gradient_penalty(LinearCritic(w), real, fake, 10.0).detach()))

w2 = torch.zeros(64, dtype=torch.float64)
w2[0] = 2.0  # gradient norm 2 -> penalty = weight * (2-1)^2
print("2x-slope critic penalty (weight 10):", float(gradient_penalty(LinearCritic(w2), real, fake, 10.0).detach()))

# ---- a tiny run: the critic learns, the log records every step --------------------
rng = np.random.default_rng(0)
cfg = NetConfig.tiny(seed=0)
t = np.linspace(0, 1, cfg.output_samples)
waves = np.array([np.sin(2 * np.pi * f * t) * 0.5 for f in rng.uniform(2, 8, 32)])

with tempfile.TemporaryDirectory() as td:
    import json
    from pathlib import Path

    log = Path(td) / "log.jsonl"
    train(waves, cfg, td, total_steps=60, checkpoint_steps=[30, 60], log_path=log)
    rows = [json.loads(l) for l in log.read_text().splitlines()]
    first = np.mean([abs(r["wasserstein"]) for r in rows[:10]])
    last = np.mean([abs(r["wasserstein"]) for r in rows[-10:]])
    print(f"|Wasserstein estimate|, first 10 steps: {first:.3f}   last 10: {last:.3f}")
    print("(the critic learns to separate real from fake as training proceeds)")
