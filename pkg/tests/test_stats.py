import numpy as np
import pytest
from scipy.optimize import minimize
from scipy.stats import nchypergeom_fisher

from latentphon.records import AnnotationRecord
from latentphon.probe.manipulate import Trajectory
from latentphon.stats import (
    ContingencyTable,
    fisher_exact,
    fit_logistic_glm,
    fit_smooth_logistic,
)
from latentphon.stats.glm import cell_rows

# harmonious/disharmonious counts by (prefix, frontness) from the generated-
# output analysis this pipeline mirrors
CELLS = {
    ("VN", "front"): (53, 21),
    ("VN", "back"): (31, 6),
    ("V", "front"): (47, 15),
    ("V", "back"): (31, 6),
}


class TestGlmReference:
    def test_reference_counts_reproduce_published_fit(self):
        y, factors, counts = cell_rows(
            {(fr, pr): CELLS[(pr, fr)] for (pr, fr) in CELLS},
            ("frontness", "prefix"),
        )
        fit = fit_logistic_glm(y, factors, interaction=True, counts=counts)
        intercept = fit.term("(Intercept)")
        assert abs(intercept["estimate"] - 1.34) <= 0.01
        assert abs(intercept["z"] - 7.20) <= 0.05
        inter = fit.term("frontness:prefix")
        assert abs(inter["p"] - 0.771) <= 0.005
        assert abs(inter["estimate"] - (-0.05)) <= 0.01
        assert abs(fit.term("frontness")["estimate"] - 0.30) <= 0.01
        assert abs(fit.term("prefix")["estimate"] - 0.05) <= 0.01

    def test_balanced_symmetric_data_zero_effects(self):
        cells = {
            ("a1", "b1"): (30, 10),
            ("a1", "b2"): (30, 10),
            ("a2", "b1"): (30, 10),
            ("a2", "b2"): (30, 10),
        }
        y, factors, counts = cell_rows(cells, ("A", "B"))
        fit = fit_logistic_glm(y, factors, counts=counts)
        for name in ("A", "B", "A:B"):
            assert abs(fit.term(name)["estimate"]) < 1e-8

    def test_matches_direct_likelihood_oracle(self):
        rng = np.random.default_rng(3)
        cells = {}
        for la in ("a1", "a2"):
            for lb in ("b1", "b2"):
                cells[(la, lb)] = (int(rng.integers(5, 60)), int(rng.integers(5, 60)))
        y, factors, counts = cell_rows(cells, ("A", "B"))
        fit = fit_logistic_glm(y, factors, counts=counts)

        code_a = fit.coding["A"]
        code_b = fit.coding["B"]

        def nll(beta):
            tot = 0.0
            for (la, lb), (s, f) in cells.items():
                x = np.array([1.0, code_a[la], code_b[lb], code_a[la] * code_b[lb]])
                eta = beta @ x
                p = 1 / (1 + np.exp(-eta))
                tot -= s * np.log(p) + f * np.log(1 - p)
            return tot

        res = minimize(nll, np.zeros(4), method="BFGS", options={"gtol": 1e-12})
        assert np.all(np.abs(fit.estimates - res.x) < 1e-6)

    def test_coding_invariance(self):
        y, factors, counts = cell_rows(
            {(fr, pr): CELLS[(pr, fr)] for (pr, fr) in CELLS},
            ("frontness", "prefix"),
        )
        fit = fit_logistic_glm(y, factors, counts=counts)
        flipped = dict(factors)
        # 'xx_back' sorts after 'front', flipping which level carries +1
        flipped["frontness"] = ["xx_back" if v == "back" else v for v in factors["frontness"]]
        fit2 = fit_logistic_glm(y, flipped, counts=counts)
        assert abs(fit.term("frontness")["estimate"] + fit2.term("frontness")["estimate"]) < 1e-9
        assert abs(fit.term("frontness:prefix")["estimate"] + fit2.term("frontness:prefix")["estimate"]) < 1e-9
        assert abs(fit.term("(Intercept)")["estimate"] - fit2.term("(Intercept)")["estimate"]) < 1e-9
        assert abs(fit.term("prefix")["estimate"] - fit2.term("prefix")["estimate"]) < 1e-9

    def test_interaction_never_increases_deviance(self):
        rng = np.random.default_rng(5)
        for trial in range(4):
            cells = {
                (la, lb): (int(rng.integers(3, 40)), int(rng.integers(3, 40)))
                for la in ("a1", "a2")
                for lb in ("b1", "b2")
            }
            y, factors, counts = cell_rows(cells, ("A", "B"))
            full = fit_logistic_glm(y, factors, counts=counts, interaction=True)
            reduced = fit_logistic_glm(y, factors, counts=counts, interaction=False)
            assert full.deviance <= reduced.deviance + 1e-9

    def test_thousand_row_oracle(self):
        rng = np.random.default_rng(11)
        n = 1000
        fa = rng.choice(["a1", "a2"], size=n)
        fb = rng.choice(["b1", "b2"], size=n)
        xa = np.where(fa == "a1", 1.0, -1.0)
        xb = np.where(fb == "b1", 1.0, -1.0)
        eta = 0.4 + 0.5 * xa - 0.3 * xb + 0.2 * xa * xb
        y = (rng.uniform(size=n) < 1 / (1 + np.exp(-eta))).astype(float)
        fit = fit_logistic_glm(y, {"A": list(fa), "B": list(fb)})

        def nll(beta):
            e = beta[0] + beta[1] * xa + beta[2] * xb + beta[3] * xa * xb
            p = np.clip(1 / (1 + np.exp(-e)), 1e-12, 1 - 1e-12)
            return -np.sum(y * np.log(p) + (1 - y) * np.log(1 - p))

        res = minimize(nll, np.zeros(4), method="BFGS", options={"gtol": 1e-12})
        assert np.all(np.abs(fit.estimates - res.x) < 1e-6)

    def test_separation_flagged(self):
        y = np.array([1.0] * 10 + [0.0] * 10)
        factors = {"A": ["a1"] * 10 + ["a2"] * 10, "B": ["b1", "b2"] * 10}
        with pytest.warns(UserWarning):
            fit = fit_logistic_glm(y, factors, interaction=False)
        assert fit.separation_flagged


class TestFisherExact:
    def test_paper_orientation_values(self):
        # non-local (48 errors / 162 ok) vs local (3 errors / 165 ok)
        t = ContingencyTable(48, 162, 3, 165)
        res = fisher_exact(t)
        assert res.p_value < 1e-4
        assert abs(res.odds_ratio - 16.2) <= 0.3
        assert abs(res.ci_low - 5.1) <= 0.51
        assert abs(res.ci_high - 83.0) <= 8.3

    def test_independence_table(self):
        res = fisher_exact(ContingencyTable(5, 5, 5, 5))
        assert res.p_value == pytest.approx(1.0)
        assert res.odds_ratio == pytest.approx(1.0, abs=1e-6)

    def test_enumeration_oracle(self):
        # p equals full hypergeometric enumeration exactly
        t = ContingencyTable(1, 9, 9, 1)
        res = fisher_exact(t)
        N, K, n = 20, 10, 10
        pmf = nchypergeom_fisher.pmf(np.arange(0, 11), N, K, n, 1.0)
        expected = pmf[pmf <= pmf[1] * (1 + 1e-7)].sum()
        assert res.p_value == pytest.approx(expected, rel=1e-12)

    def test_conditional_mle_oracle(self):
        t = ContingencyTable(48, 162, 3, 165)
        res = fisher_exact(t)
        N, K, n = 378, 210, 51
        from scipy.optimize import brentq

        psi = np.exp(
            brentq(
                lambda lp: nchypergeom_fisher.mean(N, K, n, np.exp(lp)) - 48,
                -10,
                10,
            )
        )
        assert res.odds_ratio == pytest.approx(psi, rel=1e-6)

    def test_one_sided(self):
        t = ContingencyTable(48, 162, 3, 165)
        res = fisher_exact(t, alternative="greater")
        assert res.p_value < 1e-4
        res2 = fisher_exact(t, alternative="less")
        assert res2.p_value > 0.999

    def test_zero_margin(self):
        res = fisher_exact(ContingencyTable(0, 0, 5, 5))
        assert res.p_value == 1.0
        assert not res.or_defined

    def test_extreme_cell_infinite_or(self):
        res = fisher_exact(ContingencyTable(10, 0, 2, 8))
        assert res.odds_ratio == np.inf
        assert np.isfinite(res.ci_low) and res.ci_low > 1
        assert res.ci_high == np.inf


def make_trajectories(slope=-1.0, n_sets=12, seed=0, flat=False, harmony_rate=None):
    rng = np.random.default_rng(seed)
    values = list(range(-6, 7))
    out = []
    for s in range(1, n_sets + 1):
        offset = rng.normal(scale=0.3)
        records = []
        for v in values:
            rec = AnnotationRecord(analyzable=True, prefixed=True, prefix_shape="V")
            if flat:
                front = True
            else:
                front = rng.uniform() < 1 / (1 + np.exp(-(slope * v + offset)))
            rec.v2_front = bool(front)
            if harmony_rate is not None:
                rec.prefix_vowel_front = (
                    rec.v2_front if rng.uniform() < harmony_rate else not rec.v2_front
                )
            rec.finalize_harmony()
            records.append(rec)
        out.append(
            Trajectory(
                set_id=s,
                swept_index=17,
                fixed={16: -2.5},
                values=[float(v) for v in values],
                records=records,
                base_z=np.zeros(100),
                z_rows=np.zeros((13, 100)),
            )
        )
    return out


class TestSmoothLogistic:
    def test_monotone_logit_linear_data(self):
        trajs = make_trajectories(slope=-1.0, n_sets=20, seed=1)
        fit = fit_smooth_logistic(trajs, response="frontness")
        assert fit.linear_slope < 0
        grid = np.linspace(-6, 6, 13)
        eta, lo, hi, prob = fit.fitted_curve(grid)
        assert prob[0] - prob[-1] > 0.5
        assert np.all(np.diff(prob) <= 0.02)

    def test_flat_trajectories_degenerate(self):
        trajs = make_trajectories(flat=True, n_sets=2, seed=2)
        with pytest.warns(UserWarning):
            fit = fit_smooth_logistic(trajs, response="frontness")
        assert fit.degenerate

    def test_single_trajectory_rejected(self):
        trajs = make_trajectories(n_sets=1, seed=3)
        with pytest.raises(ValueError):
            fit_smooth_logistic(trajs, response="frontness")

    def test_harmony_significant_at_both_levels(self):
        trajs = make_trajectories(slope=-1.0, n_sets=25, seed=4, harmony_rate=0.85)
        fit = fit_smooth_logistic(
            trajs, response="harmonious", by_level_factor=True
        )
        for level in (False, True):
            eta, lo, hi = fit.level_logit_ci(level)
            assert lo > 0.0, f"level {level} CI crosses zero"
