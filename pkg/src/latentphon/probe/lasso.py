"""L1-penalized logistic regression by coordinate descent.

Fits the whole regularization path on a log-spaced penalty grid with warm
starts (outer IRLS quadratic approximation, inner cyclic coordinate descent
with soft thresholding, active-set sweeps). The penalty is selected by
10-fold cross-validated deviance; predictors are used raw (the latent draws
already share the (-1,1) scale), and the intercept is never penalized.
Every grid point carries a verified KKT subgradient residual.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

_P_EPS = 1e-9
_W_FLOOR = 1e-6


@dataclass
class LassoFit:
    response: str
    coefficients: np.ndarray  # at the selected penalty
    intercept: float
    lambda_grid: np.ndarray
    cv_deviance: np.ndarray  # mean held-out deviance per grid point
    cv_se: np.ndarray
    selected_lambda: float
    selected_index: int
    folds: int
    kkt_residuals: np.ndarray  # per grid point, on the full-data path
    path_coefficients: np.ndarray  # (n_lambda, p)
    path_intercepts: np.ndarray
    dropped_columns: list[int] = field(default_factory=list)

    def ranking(self) -> np.ndarray:
        order = np.lexsort((np.arange(len(self.coefficients)), -np.abs(self.coefficients)))
        return order


@dataclass
class RankReport:
    order: np.ndarray  # variable indices, largest |coefficient| first
    sorted_magnitudes: np.ndarray
    drop_ratio: float
    drop_position: int  # gap sits after this many leading variables
    top_set: list[int]
    significant: bool
    diagnostic: str = ""


def _sigmoid(eta):
    return expit(eta)


def _deviance(y, p):
    p = np.clip(p, _P_EPS, 1 - _P_EPS)
    return -2.0 * np.sum(y * np.log(p) + (1 - y) * np.log(1 - p))


def _soft(x, t):
    return np.sign(x) * max(abs(x) - t, 0.0)


def _cd_fit(X, y, lam, beta0, beta, max_outer=60, tol=1e-10):
    """One penalized fit at a single lambda, warm-started in place."""
    n, p = X.shape
    for _ in range(max_outer):
        eta = beta0 + X @ beta
        prob = _sigmoid(eta)
        w = np.maximum(prob * (1 - prob), _W_FLOOR)
        z = eta + (y - prob) / w
        # inner weighted-least-squares coordinate descent; weights are fixed
        # within the quadratic approximation, so hoist the weighted columns
        WX = X * w[:, None]
        denoms = (WX * X).sum(axis=0) / n
        r = z - beta0 - X @ beta
        wsum = w.sum()
        for sweep in range(200):
            max_delta = 0.0
            active_only = sweep % 5 != 0 and sweep > 0
            for j in range(p):
                bj = beta[j]
                if active_only and bj == 0.0:
                    continue
                denom = denoms[j]
                if denom <= 0:
                    continue
                rho = WX[:, j] @ r / n + denom * bj
                new = _soft(rho, lam) / denom
                if new != bj:
                    r -= X[:, j] * (new - bj)
                    beta[j] = new
                    max_delta = max(max_delta, abs(new - bj))
            b0_new = beta0 + (w @ r) / wsum
            r -= b0_new - beta0
            max_delta = max(max_delta, abs(b0_new - beta0))
            beta0 = b0_new
            if max_delta < tol:
                break
        eta = beta0 + X @ beta
        prob = _sigmoid(eta)
        grad0 = np.mean(y - prob)
        if abs(grad0) < 1e-9 and _kkt_residual(X, y, prob, beta, lam) <= 1e-8:
            break
    return beta0, beta


def _kkt_residual(X, y, prob, beta, lam):
    g = X.T @ (y - prob) / X.shape[0]
    res = 0.0
    for j in range(X.shape[1]):
        if beta[j] != 0.0:
            res = max(res, abs(g[j] - lam * np.sign(beta[j])))
        else:
            res = max(res, max(abs(g[j]) - lam, 0.0))
    return res


def _path(X, y, grid):
    p = X.shape[1]
    betas = np.zeros((len(grid), p))
    intercepts = np.zeros(len(grid))
    ybar = np.clip(y.mean(), _P_EPS, 1 - _P_EPS)
    beta0 = float(np.log(ybar / (1 - ybar)))
    beta = np.zeros(p)
    for k, lam in enumerate(grid):
        beta0, beta = _cd_fit(X, y, lam, beta0, beta.copy())
        betas[k] = beta
        intercepts[k] = beta0
    return intercepts, betas


def lambda_grid(X, y, n_points=80, ratio=1e-4):
    ybar = y.mean()
    lam_max = float(np.max(np.abs(X.T @ (y - ybar)))) / X.shape[0]
    lam_max = max(lam_max, 1e-8)
    return np.geomspace(lam_max, lam_max * ratio, n_points)


def fit_lasso_logistic(
    X: np.ndarray,
    y: np.ndarray,
    folds: int = 10,
    response: str = "response",
    n_lambda: int = 80,
    seed: int = 0,
) -> LassoFit:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).ravel()
    n, p = X.shape
    if len(y) != n:
        raise ValueError("X and y disagree on n")
    if n < folds:
        raise ValueError(f"need at least {folds} rows for {folds}-fold CV")
    classes = np.unique(y)
    if not np.array_equal(classes, [0, 1]) and not np.array_equal(classes, [0.0, 1.0]):
        if len(classes) < 2:
            raise ValueError("response has a single class")
        raise ValueError("response must be binary 0/1")

    dropped = [j for j in range(p) if np.ptp(X[:, j]) == 0.0]
    if dropped:
        warnings.warn(f"dropping constant predictor columns {dropped}")
    keep = [j for j in range(p) if j not in set(dropped)]
    Xk = X[:, keep]

    grid = lambda_grid(Xk, y, n_points=n_lambda)
    intercepts, betas = _path(Xk, y, grid)

    # KKT certificates on the full-data path
    kkt = np.zeros(len(grid))
    for k, lam in enumerate(grid):
        prob = _sigmoid(intercepts[k] + Xk @ betas[k])
        kkt[k] = _kkt_residual(Xk, y, prob, betas[k], lam)

    # 10-fold CV curve
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    fold_of = np.zeros(n, dtype=int)
    for i, idx in enumerate(order):
        fold_of[idx] = i % folds
    dev = np.zeros((folds, len(grid)))
    for f in range(folds):
        tr, te = fold_of != f, fold_of == f
        if len(np.unique(y[tr])) < 2:
            raise ValueError(f"fold {f} lost a class; use fewer folds")
        ints_f, betas_f = _path(Xk[tr], y[tr], grid)
        for k in range(len(grid)):
            pte = _sigmoid(ints_f[k] + Xk[te] @ betas_f[k])
            dev[f, k] = _deviance(y[te], pte) / te.sum()
    cv_mean = dev.mean(axis=0)
    cv_se = dev.std(axis=0, ddof=1) / np.sqrt(folds)
    sel = int(np.argmin(cv_mean))

    coef = np.zeros(p)
    coef[keep] = betas[sel]
    path_full = np.zeros((len(grid), p))
    path_full[:, keep] = betas
    return LassoFit(
        response=response,
        coefficients=coef,
        intercept=float(intercepts[sel]),
        lambda_grid=grid,
        cv_deviance=cv_mean,
        cv_se=cv_se,
        selected_lambda=float(grid[sel]),
        selected_index=sel,
        folds=folds,
        kkt_residuals=kkt,
        path_coefficients=path_full,
        path_intercepts=intercepts,
        dropped_columns=dropped,
    )


def rank_variables(fit: LassoFit, significance_ratio: float = 3.0) -> RankReport:
    """Sort variables by |coefficient| and locate the largest consecutive gap."""
    mags = np.abs(fit.coefficients)
    order = fit.ranking()
    sorted_mags = mags[order]
    if sorted_mags[0] == 0.0:
        return RankReport(
            order=np.array([], dtype=int),
            sorted_magnitudes=sorted_mags,
            drop_ratio=1.0,
            drop_position=0,
            top_set=[],
            significant=False,
            diagnostic="all coefficients are zero at the selected penalty",
        )
    nonzero = int((sorted_mags > 0).sum())
    best_ratio, best_pos = 1.0, nonzero
    for i in range(min(nonzero, len(sorted_mags) - 1)):
        nxt = sorted_mags[i + 1]
        ratio = np.inf if nxt == 0.0 else sorted_mags[i] / nxt
        if ratio > best_ratio:
            best_ratio, best_pos = float(ratio), i + 1
    return RankReport(
        order=order,
        sorted_magnitudes=sorted_mags,
        drop_ratio=best_ratio,
        drop_position=best_pos,
        top_set=[int(v) for v in order[:best_pos]],
        significant=best_ratio >= significance_ratio,
    )
