"""1-D convolutional GAN: generator/critic pair with the gradient-penalty
Wasserstein objective, checkpointing, and deterministic generation."""

from .latent import LatentVector, sample_latent
from .model import Discriminator, Generator, NetConfig
from .losses import critic_loss, generator_loss, gradient_penalty, wasserstein_estimate
from .train import Checkpoint, TrainingAborted, load_checkpoint, train
from .generate import generate_batch, generator_forward

__all__ = [
    "Checkpoint",
    "Discriminator",
    "Generator",
    "LatentVector",
    "NetConfig",
    "TrainingAborted",
    "critic_loss",
    "generate_batch",
    "generator_forward",
    "generator_loss",
    "gradient_penalty",
    "load_checkpoint",
    "sample_latent",
    "train",
    "wasserstein_estimate",
]
