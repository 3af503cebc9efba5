"""Binomial GLM with sum-coded two-level factors, fit by IRLS.

Factor coding follows the contr.sum convention: the alphabetically first
level carries +1, the second -1, so the intercept is the grand mean on the
logit scale. Standard errors come from the observed information at the MLE
(identical to expected information under the canonical logit link).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import expit
from scipy.stats import norm


@dataclass
class GlmFit:
    names: list[str]
    estimates: np.ndarray
    std_errors: np.ndarray
    z_values: np.ndarray
    p_values: np.ndarray
    coding: dict[str, dict[str, int]]
    converged: bool
    separation_flagged: bool
    deviance: float
    null_deviance: float
    n_obs: int

    def term(self, name: str) -> dict:
        i = self.names.index(name)
        return {
            "estimate": float(self.estimates[i]),
            "se": float(self.std_errors[i]),
            "z": float(self.z_values[i]),
            "p": float(self.p_values[i]),
        }

    def table(self) -> list[dict]:
        return [self.term(n) | {"term": n} for n in self.names]


def _sum_code(levels_seen) -> dict[str, int]:
    levels = sorted(set(levels_seen))
    if len(levels) != 2:
        raise ValueError(f"factors must have exactly two levels, got {levels}")
    return {levels[0]: 1, levels[1]: -1}


def fit_logistic_glm(
    y,
    factors: dict[str, list],
    interaction: bool = True,
    counts=None,
    max_iter: int = 100,
    tol: float = 1e-12,
) -> GlmFit:
    """Maximum-likelihood logistic regression of a binary response on two-level
    sum-coded factors (optionally with their pairwise interaction).

    `counts` gives frequency weights, so aggregated cell data work directly.
    Complete separation is detected and flagged; estimates are still reported
    with a warning.
    """
    y = np.asarray(y, dtype=np.float64).ravel()
    n = len(y)
    w_freq = np.ones(n) if counts is None else np.asarray(counts, dtype=np.float64)
    if np.any((y != 0) & (y != 1)):
        raise ValueError("response must be binary 0/1")
    names = ["(Intercept)"]
    cols = [np.ones(n)]
    coding: dict[str, dict[str, int]] = {}
    factor_cols: dict[str, np.ndarray] = {}
    for fname, values in factors.items():
        values = list(values)
        if len(values) != n:
            raise ValueError(f"factor {fname} length mismatch")
        code = _sum_code(values)
        if len(set(values)) < 2:
            raise ValueError(f"factor {fname} has a single level in the data")
        col = np.array([code[v] for v in values], dtype=np.float64)
        coding[fname] = code
        factor_cols[fname] = col
        names.append(fname)
        cols.append(col)
    if interaction and len(factors) >= 2:
        fnames = list(factors)
        for i in range(len(fnames)):
            for j in range(i + 1, len(fnames)):
                names.append(f"{fnames[i]}:{fnames[j]}")
                cols.append(factor_cols[fnames[i]] * factor_cols[fnames[j]])
    X = np.column_stack(cols)

    beta = np.zeros(X.shape[1])
    converged = False
    for _ in range(max_iter):
        eta = X @ beta
        p = expit(eta)
        w = np.maximum(w_freq * p * (1 - p), 1e-12)
        z = eta + (y - p) / np.maximum(p * (1 - p), 1e-12)
        XtW = X.T * w
        try:
            new = np.linalg.solve(XtW @ X, XtW @ z)
        except np.linalg.LinAlgError:
            raise ValueError("design matrix is singular")
        if np.max(np.abs(new - beta)) < tol:
            beta = new
            converged = True
            break
        beta = new

    eta = X @ beta
    p = np.clip(expit(eta), 1e-12, 1 - 1e-12)
    separation = bool(np.max(np.abs(eta)) > 25.0) or not converged
    if separation:
        warnings.warn(
            "possible complete separation: estimates reported with caution"
        )
    w = np.maximum(w_freq * p * (1 - p), 1e-12)
    info = (X.T * w) @ X
    cov = np.linalg.inv(info)
    se = np.sqrt(np.diag(cov))
    zval = beta / se
    pval = 2 * norm.sf(np.abs(zval))

    dev = -2 * float(np.sum(w_freq * (y * np.log(p) + (1 - y) * np.log(1 - p))))
    ybar = np.clip(np.sum(w_freq * y) / np.sum(w_freq), 1e-12, 1 - 1e-12)
    null_dev = -2 * float(
        np.sum(w_freq * (y * np.log(ybar) + (1 - y) * np.log(1 - ybar)))
    )
    return GlmFit(
        names=names,
        estimates=beta,
        std_errors=se,
        z_values=zval,
        p_values=pval,
        coding=coding,
        converged=converged,
        separation_flagged=separation,
        deviance=dev,
        null_deviance=null_dev,
        n_obs=int(np.sum(w_freq)),
    )


def cell_rows(cells: dict[tuple, tuple[int, int]], factor_names: tuple[str, str]):
    """Expand {(level_a, level_b): (successes, failures)} into GLM arguments."""
    y, counts = [], []
    fa, fb = [], []
    for (la, lb), (succ, fail) in cells.items():
        for val, cnt in ((1.0, succ), (0.0, fail)):
            if cnt > 0:
                y.append(val)
                counts.append(cnt)
                fa.append(la)
                fb.append(lb)
    return (
        np.array(y),
        {factor_names[0]: fa, factor_names[1]: fb},
        np.array(counts, dtype=float),
    )
