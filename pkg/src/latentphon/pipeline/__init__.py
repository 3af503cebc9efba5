"""Experiment orchestration: config, staged pipeline, CLI, and HTTP service."""

from .config import ExperimentConfig
from .run import Pipeline, conformity_analysis

__all__ = ["ExperimentConfig", "Pipeline", "conformity_analysis"]
