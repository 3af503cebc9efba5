"""Penalized-spline logistic regression over interpolation trajectories.

Approximates smooth-term mixed logistic models: a cubic B-spline in the swept
value (second-difference penalty, smoothing weight by GCV), an optional
two-level factor with by-level smooths, and ridge-shrunk per-trajectory
intercepts standing in for random effects. Pointwise intervals come from the
penalized-information posterior covariance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import BSpline
from scipy.special import expit
from scipy.stats import norm


def bspline_basis(x: np.ndarray, lo: float, hi: float, n_basis: int = 10, degree: int = 3):
    inner = np.linspace(lo, hi, n_basis - degree + 1)
    knots = np.r_[[lo] * degree, inner, [hi] * degree]
    x = np.clip(x, lo, hi)
    cols = [
        BSpline(knots, np.eye(n_basis)[j], degree, extrapolate=False)(x)
        for j in range(n_basis)
    ]
    B = np.nan_to_num(np.column_stack(cols))
    return B, knots


def _second_diff_penalty(n_basis: int) -> np.ndarray:
    D = np.diff(np.eye(n_basis), n=2, axis=0)
    return D.T @ D


@dataclass
class SmoothFit:
    response: str
    parametric_names: list[str]
    parametric_estimates: np.ndarray
    parametric_se: np.ndarray
    parametric_z: np.ndarray
    parametric_p: np.ndarray
    smoothing_lambda: float
    group_ridge: float
    edf: float
    gcv: float
    degenerate: bool
    linear_slope: float
    linear_slope_se: float
    value_range: tuple[float, float]
    levels: list | None
    level_ranges: dict | None = None
    _beta: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]
    _cov: np.ndarray = field(repr=False, default=None)  # type: ignore[assignment]
    _design_fn: object = field(repr=False, default=None)

    def fitted_curve(self, values: np.ndarray, level=None, ci_z: float = 1.96):
        """(logit fit, lower, upper, probability fit) on a value grid."""
        X = self._design_fn(np.asarray(values, dtype=float), level)
        eta = X @ self._beta
        se = np.sqrt(np.maximum(np.einsum("ij,jk,ik->i", X, self._cov, X), 0.0))
        lo, hi = eta - ci_z * se, eta + ci_z * se
        return eta, lo, hi, expit(eta)

    def level_logit_ci(self, level, ci_z: float = 1.96) -> tuple[float, float, float]:
        """Mean logit and CI for one factor level over its supported values."""
        rng = (self.level_ranges or {}).get(bool(level), self.value_range)
        grid = np.linspace(*rng, 25)
        X = self._design_fn(grid, level).mean(axis=0, keepdims=True)
        eta = float((X @ self._beta).item())
        se = float(np.sqrt(max(float((X @ self._cov @ X.T).item()), 0.0)))
        return eta, eta - ci_z * se, eta + ci_z * se

    def term(self, name: str) -> dict:
        i = self.parametric_names.index(name)
        return {
            "estimate": float(self.parametric_estimates[i]),
            "se": float(self.parametric_se[i]),
            "z": float(self.parametric_z[i]),
            "p": float(self.parametric_p[i]),
        }


def _pirls(X, y, S, max_iter=200, tol=1e-10):
    beta = np.zeros(X.shape[1])
    for _ in range(max_iter):
        eta = X @ beta
        p = expit(eta)
        w = np.maximum(p * (1 - p), 1e-10)
        z = eta + (y - p) / w
        XtW = X.T * w
        H = XtW @ X + S
        new = np.linalg.solve(H, XtW @ z)
        if np.max(np.abs(new - beta)) < tol:
            beta = new
            break
        beta = new
    eta = X @ beta
    p = np.clip(expit(eta), 1e-12, 1 - 1e-12)
    w = np.maximum(p * (1 - p), 1e-10)
    XtW = X.T * w
    H = XtW @ X + S
    Hinv = np.linalg.inv(H)
    edf = float(np.trace(Hinv @ (XtW @ X)))
    dev = -2 * float(np.sum(y * np.log(p) + (1 - y) * np.log(1 - p)))
    return beta, Hinv, edf, dev


def fit_smooth_logistic(
    trajectories,
    response: str = "frontness",
    group_effects: bool = True,
    by_level_factor: bool = False,
    n_basis: int = 10,
    lambda_grid=None,
    ridge_grid=(0.5, 2.0, 8.0),
    response_fn=None,
    level_fn=None,
) -> SmoothFit:
    """Fit the penalized-smooth logistic model over sweep trajectories.

    response: 'frontness' (front vowel as success) or 'harmonious'; rows whose
    label is undefined are dropped. With by_level_factor, the frontness factor
    enters parametrically (sum-coded) and each level carries its own smooth.
    """
    if len(trajectories) < 2:
        raise ValueError("need at least two trajectories")
    if response_fn is None:
        if response == "frontness":
            response_fn = lambda r: r.v2_front if r.analyzable else None
        elif response == "harmonious":
            response_fn = lambda r: r.harmonious if r.analyzable else None
        else:
            raise ValueError(f"unknown response {response!r}")
    if by_level_factor and level_fn is None:
        level_fn = lambda r: r.v2_front

    rows_v, rows_y, rows_g, rows_lvl = [], [], [], []
    for t in trajectories:
        for v, rec in zip(t.values, t.records):
            lab = response_fn(rec)
            if lab is None:
                continue
            lvl = bool(level_fn(rec)) if by_level_factor and level_fn(rec) is not None else None
            if by_level_factor and lvl is None:
                continue
            rows_v.append(float(v))
            rows_y.append(1.0 if lab else 0.0)
            rows_g.append(t.set_id)
            rows_lvl.append(lvl)
    v = np.array(rows_v)
    y = np.array(rows_y)
    if len(y) == 0:
        raise ValueError("no usable rows for this response")
    degenerate = len(np.unique(y)) < 2
    if degenerate:
        warnings.warn("response is constant; fit is degenerate")

    lo, hi = float(v.min()), float(v.max())
    groups = sorted(set(rows_g)) if group_effects else []
    gindex = {g: i for i, g in enumerate(groups)}
    levels = [False, True] if by_level_factor else None

    # centering constants are frozen from the training rows so that curve
    # grids evaluate in the same coordinates
    B_train, _ = bspline_basis(v, lo, hi, n_basis=n_basis)
    b_means = B_train.mean(axis=0, keepdims=True)

    def design(values, level=None, group_rows=None):
        values = np.asarray(values, dtype=float)
        B, _ = bspline_basis(values, lo, hi, n_basis=n_basis)
        Bc = B - b_means
        cols = [np.ones(len(values))]
        if by_level_factor:
            if isinstance(level, np.ndarray):
                lv = np.where(level, -1.0, 1.0)  # back=+1, front=-1 (sum code)
            else:
                lv = np.full(len(values), -1.0 if level else 1.0)
            cols.append(lv)
            front_mask = lv < 0
            Bf = Bc * front_mask[:, None]
            Bb = Bc * (~front_mask)[:, None]
            smooth_cols = [Bb, Bf]
        else:
            smooth_cols = [Bc]
        X = np.column_stack(cols + smooth_cols)
        G = np.zeros((len(values), len(groups)))
        if group_rows is not None:
            for i, g in enumerate(group_rows):
                G[i, gindex[g]] = 1.0
        return np.column_stack([X, G]) if groups else X

    lvl_arr = np.array(rows_lvl) if by_level_factor else None
    X = design(v, level=lvl_arr, group_rows=rows_g)
    n_param = 2 if by_level_factor else 1
    n_smooth = (2 if by_level_factor else 1) * n_basis
    P = _second_diff_penalty(n_basis)

    if lambda_grid is None:
        lambda_grid = np.geomspace(1e-2, 1e3, 9)

    best = None
    for lam in lambda_grid:
        for tau in ridge_grid if groups else (0.0,):
            S = np.zeros((X.shape[1], X.shape[1]))
            off = n_param
            for _ in range(2 if by_level_factor else 1):
                S[off : off + n_basis, off : off + n_basis] = lam * P
                off += n_basis
            if groups:
                S[off:, off:] = tau * np.eye(len(groups))
            beta, cov, edf, dev = _pirls(X, y, S)
            n = len(y)
            gcv = n * dev / max((n - edf) ** 2, 1e-9)
            if best is None or gcv < best[0]:
                best = (gcv, lam, tau, beta, cov, edf, dev)
    gcv, lam, tau, beta, cov, edf, dev = best

    par_names = ["(Intercept)"] + (["frontness"] if by_level_factor else [])
    est = beta[:n_param]
    se = np.sqrt(np.diag(cov)[:n_param])
    zv = est / se
    pv = 2 * norm.sf(np.abs(zv))

    level_ranges = None
    if by_level_factor:
        level_ranges = {}
        for lv in (False, True):
            vals = v[lvl_arr == lv]
            if len(vals):
                level_ranges[lv] = (float(vals.min()), float(vals.max()))

    # parametric-linear refit for the sign/trend check
    Xlin_cols = [np.ones(len(v)), v]
    if groups:
        G = np.zeros((len(v), len(groups)))
        for i, g in enumerate(rows_g):
            G[i, gindex[g]] = 1.0
        Xlin = np.column_stack(Xlin_cols + [G])
        Slin = np.zeros((Xlin.shape[1], Xlin.shape[1]))
        Slin[2:, 2:] = tau * np.eye(len(groups))
    else:
        Xlin = np.column_stack(Xlin_cols)
        Slin = np.zeros((2, 2))
    beta_l, cov_l, _, _ = _pirls(Xlin, y, Slin)

    def design_for_curve(values, level=None):
        return design(values, level=level, group_rows=None)

    return SmoothFit(
        response=response,
        parametric_names=par_names,
        parametric_estimates=est,
        parametric_se=se,
        parametric_z=zv,
        parametric_p=pv,
        smoothing_lambda=float(lam),
        group_ridge=float(tau),
        edf=edf,
        gcv=float(gcv),
        degenerate=degenerate,
        linear_slope=float(beta_l[1]),
        linear_slope_se=float(np.sqrt(cov_l[1, 1])),
        value_range=(lo, hi),
        levels=levels,
        level_ranges=level_ranges,
        _beta=beta,
        _cov=cov,
        _design_fn=design_for_curve,
    )
