"""Exact 2x2 test: hypergeometric enumeration, conditional-MLE odds ratio,
and the confidence interval obtained by inverting the exact test.

All probabilities come from direct enumeration of the (noncentral)
hypergeometric support in log space; no normal or chi-square asymptotics.
The odds ratio is oriented as odds(row 1) / odds(row 2) for column 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


@dataclass(frozen=True)
class ContingencyTable:
    a: int  # row1, col1
    b: int  # row1, col2
    c: int  # row2, col1
    d: int  # row2, col2
    row_labels: tuple[str, str] = ("row1", "row2")
    col_labels: tuple[str, str] = ("col1", "col2")

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if v < 0 or int(v) != v:
                raise ValueError("counts must be nonnegative integers")
        if self.a + self.b + self.c + self.d == 0:
            raise ValueError("table is empty")

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass
class FisherResult:
    p_value: float
    odds_ratio: float  # conditional MLE; nan when undefined
    ci_low: float
    ci_high: float
    alternative: str
    or_defined: bool
    table: ContingencyTable

    def summary(self) -> str:
        orr = f"{self.odds_ratio:.3g}" if self.or_defined else "undefined"
        return (
            f"OR={orr} [{self.ci_low:.3g}, {self.ci_high:.3g}], "
            f"p={self.p_value:.3g} ({self.alternative})"
        )


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _support_weights(table: ContingencyTable, log_psi: float):
    """Support of the (1,1) cell with log weights of the noncentral pmf."""
    a, b, c, d = table.counts
    r1, r2 = a + b, c + d
    n1 = a + c
    lo = max(0, n1 - r2)
    hi = min(r1, n1)
    ks = np.arange(lo, hi + 1)
    logw = _log_binom(r1, ks) + _log_binom(r2, n1 - ks) + ks * log_psi
    logw -= logw.max()
    return ks, logw


def _pmf(table, log_psi):
    ks, logw = _support_weights(table, log_psi)
    w = np.exp(logw)
    return ks, w / w.sum()


def _cond_mean(table, log_psi) -> float:
    ks, p = _pmf(table, log_psi)
    return float(np.dot(ks, p))


def _solve_monotone(f, target, lo=-60.0, hi=60.0, tol=1e-12, iters=300):
    """Bisection for increasing f on [lo, hi]."""
    flo, fhi = f(lo) - target, f(hi) - target
    if flo > 0 or fhi < 0:
        return None
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) - target > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def fisher_exact(
    table: ContingencyTable,
    alternative: str = "two-sided",
    alpha: float = 0.05,
) -> FisherResult:
    a, b, c, d = table.counts
    ks, p0 = _pmf(table, 0.0)
    idx = int(a - ks[0])

    if alternative == "two-sided":
        pval = float(p0[p0 <= p0[idx] * (1 + 1e-7)].sum())
    elif alternative == "greater":
        pval = float(p0[idx:].sum())
    elif alternative == "less":
        pval = float(p0[: idx + 1].sum())
    else:
        raise ValueError(f"unknown alternative {alternative!r}")
    pval = min(pval, 1.0)

    zero_margin = min(a + b, c + d, a + c, b + d) == 0
    if zero_margin:
        return FisherResult(1.0, float("nan"), 0.0, float("inf"), alternative, False, table)

    # conditional MLE: psi with E_psi[A] = a (monotone increasing in psi)
    if a == ks[0]:
        or_hat, defined = 0.0, True
    elif a == ks[-1]:
        or_hat, defined = float("inf"), True
    else:
        root = _solve_monotone(lambda t: _cond_mean(table, t), float(a))
        or_hat, defined = (math.exp(root), True) if root is not None else (float("nan"), False)

    # CI by inverting the exact test at alpha/2 per tail
    def sf_geq(log_psi):  # P(A >= a), increasing in psi
        _, p = _pmf(table, log_psi)
        return float(p[idx:].sum())

    def cdf_leq(log_psi):  # P(A <= a), decreasing in psi
        _, p = _pmf(table, log_psi)
        return float(p[: idx + 1].sum())

    if a == ks[0]:
        lower = 0.0
    else:
        root = _solve_monotone(sf_geq, alpha / 2)
        lower = math.exp(root) if root is not None else 0.0
    if a == ks[-1]:
        upper = float("inf")
    else:
        root = _solve_monotone(lambda t: -cdf_leq(t), -alpha / 2)
        upper = math.exp(root) if root is not None else float("inf")

    return FisherResult(pval, or_hat, lower, upper, alternative, defined, table)
