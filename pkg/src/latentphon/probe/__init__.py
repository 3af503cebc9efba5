"""Latent-variable attribution and generative verification."""

from .lasso import LassoFit, RankReport, fit_lasso_logistic, rank_variables
from .manipulate import (
    ManipulationResult,
    Trajectory,
    interpolate_sweep,
    progression_compare,
    set_and_generate,
    wilson_interval,
)

__all__ = [
    "LassoFit",
    "ManipulationResult",
    "RankReport",
    "Trajectory",
    "fit_lasso_logistic",
    "interpolate_sweep",
    "progression_compare",
    "rank_variables",
    "set_and_generate",
    "wilson_interval",
]
