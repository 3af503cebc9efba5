"""Wasserstein-with-gradient-penalty loss terms.

The critic minimizes mean D(fake) - mean D(real) plus the penalty
gp_weight * E[(||grad_x D(x_hat)||_2 - 1)^2] over random interpolates
x_hat = eps*real + (1-eps)*fake; the generator minimizes -mean D(fake).
"""

from __future__ import annotations

import torch


def gradient_penalty(
    discriminator: torch.nn.Module,
    real: torch.Tensor,
    fake: torch.Tensor,
    gp_weight: float,
) -> torch.Tensor:
    if real.shape != fake.shape:
        raise ValueError(f"batch shapes differ: {tuple(real.shape)} vs {tuple(fake.shape)}")
    if real.size(0) < 1:
        raise ValueError("empty batch")
    if gp_weight < 0:
        raise ValueError("gp_weight must be nonnegative")
    eps_shape = (real.size(0),) + (1,) * (real.dim() - 1)
    eps = torch.rand(eps_shape, dtype=real.dtype, device=real.device)
    x_hat = (eps * real + (1.0 - eps) * fake).detach().requires_grad_(True)
    scores = discriminator(x_hat)
    grads = torch.autograd.grad(
        scores.sum(), x_hat, create_graph=True, retain_graph=True
    )[0]
    norms = grads.flatten(1).norm(2, dim=1)
    return gp_weight * ((norms - 1.0) ** 2).mean()


def critic_loss(
    discriminator: torch.nn.Module,
    real: torch.Tensor,
    fake: torch.Tensor,
    gp_weight: float,
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """(total critic loss, wasserstein estimate, penalty term)."""
    d_real = discriminator(real).mean()
    d_fake = discriminator(fake).mean()
    gp = gradient_penalty(discriminator, real, fake, gp_weight)
    w_est = d_real - d_fake
    return d_fake - d_real + gp, w_est, gp


def generator_loss(discriminator: torch.nn.Module, fake: torch.Tensor) -> torch.Tensor:
    return -discriminator(fake).mean()


def wasserstein_estimate(
    discriminator: torch.nn.Module, real: torch.Tensor, fake: torch.Tensor
) -> torch.Tensor:
    with torch.no_grad():
        return discriminator(real).mean() - discriminator(fake).mean()
