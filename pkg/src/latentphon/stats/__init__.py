"""Statistical verification: sum-coded logistic GLM, exact 2x2 test, and
penalized-smooth trajectory regression."""

from .glm import GlmFit, fit_logistic_glm
from .fisher import ContingencyTable, FisherResult, fisher_exact
from .smooth import SmoothFit, fit_smooth_logistic

__all__ = [
    "ContingencyTable",
    "FisherResult",
    "GlmFit",
    "SmoothFit",
    "fisher_exact",
    "fit_logistic_glm",
    "fit_smooth_logistic",
]
