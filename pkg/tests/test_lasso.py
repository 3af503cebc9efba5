import numpy as np
import pytest
from scipy.optimize import minimize

from latentphon.probe import fit_lasso_logistic, rank_variables
from latentphon.probe.lasso import LassoFit, lambda_grid, _sigmoid


def logistic_data(n=120, p=8, strong=(0,), seed=0, noise=1.0):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1, 1, size=(n, p))
    eta = sum(3.0 * X[:, j] for j in strong) + noise * 0.3
    y = (rng.uniform(size=n) < _sigmoid(eta)).astype(float)
    return X, y


def nll(params, X, y):
    b0, b = params[0], params[1:]
    eta = b0 + X @ b
    p = np.clip(_sigmoid(eta), 1e-12, 1 - 1e-12)
    return -np.mean(y * np.log(p) + (1 - y) * np.log(1 - p))


def ista_oracle(X, y, lam, iters=200_000, tol=1e-12):
    """Proximal-gradient reference solution, independent of the CD path."""
    n, p = X.shape
    Xa = np.hstack([np.ones((n, 1)), X])
    L = np.linalg.norm(Xa, 2) ** 2 / (4 * n)
    t = 1.0 / L
    params = np.zeros(p + 1)
    for _ in range(iters):
        eta = Xa @ params
        grad = Xa.T @ (_sigmoid(eta) - y) / n
        new = params - t * grad
        new[1:] = np.sign(new[1:]) * np.maximum(np.abs(new[1:]) - t * lam, 0.0)
        if np.max(np.abs(new - params)) < tol:
            params = new
            break
        params = new
    return params[0], params[1:]


class TestPenaltyFreeLimit:
    def test_matches_unpenalized_mle(self):
        # well-conditioned, non-separable data: lambda -> 0 equals plain MLE
        X, y = logistic_data(n=200, p=4, seed=1)
        fit = fit_lasso_logistic(X, y, folds=5, n_lambda=60, seed=0)
        lam_tiny = fit.lambda_grid[-1]
        from latentphon.probe.lasso import _cd_fit

        b0, b = _cd_fit(X, y, 0.0, 0.0, np.zeros(4))
        res = minimize(nll, np.zeros(5), args=(X, y), method="BFGS", tol=1e-12)
        assert abs(b0 - res.x[0]) < 1e-4
        assert np.all(np.abs(b - res.x[1:]) < 1e-4)

    def test_full_shrinkage(self):
        X, y = logistic_data(n=150, p=6, seed=2)
        fit = fit_lasso_logistic(X, y, folds=5, seed=0)
        # at the top of the grid all slopes vanish and the intercept is the
        # base-rate log odds
        assert np.all(fit.path_coefficients[0] == 0.0)
        ybar = y.mean()
        assert abs(fit.path_intercepts[0] - np.log(ybar / (1 - ybar))) < 1e-6


class TestOracleAgreement:
    def test_one_true_predictor_recovery(self):
        rng = np.random.default_rng(7)
        X = rng.uniform(-1, 1, size=(40, 5))
        y = (rng.uniform(size=40) < _sigmoid(2.5 * X[:, 2])).astype(float)
        fit = fit_lasso_logistic(X, y, folds=5, seed=3)
        nonzero = set(np.flatnonzero(fit.coefficients))
        assert 2 in nonzero
        b0, b = ista_oracle(X, y, fit.selected_lambda)
        assert np.all(np.abs(fit.coefficients - b) < 1e-5)
        assert abs(fit.intercept - b0) < 1e-5

    def test_path_point_matches_ista(self):
        X, y = logistic_data(n=60, p=6, strong=(1, 4), seed=9)
        fit = fit_lasso_logistic(X, y, folds=5, seed=0)
        k = len(fit.lambda_grid) // 2
        b0, b = ista_oracle(X, y, fit.lambda_grid[k])
        assert np.all(np.abs(fit.path_coefficients[k] - b) < 1e-5)


class TestCertificatesAndCV:
    def test_kkt_residuals_everywhere(self):
        X, y = logistic_data(n=150, p=10, strong=(0, 3), seed=4)
        fit = fit_lasso_logistic(X, y, folds=5, seed=0)
        assert np.all(fit.kkt_residuals <= 1e-6)

    def test_cv_curve_shape_and_determinism(self):
        X, y = logistic_data(n=100, p=5, seed=5)
        a = fit_lasso_logistic(X, y, folds=10, seed=11)
        b = fit_lasso_logistic(X, y, folds=10, seed=11)
        assert len(a.cv_deviance) == len(a.lambda_grid)
        assert a.selected_lambda == b.selected_lambda
        assert np.array_equal(a.cv_deviance, b.cv_deviance)

    def test_single_class_rejected(self):
        X = np.zeros((30, 3))
        with pytest.raises(ValueError):
            fit_lasso_logistic(X, np.ones(30), folds=5)

    def test_constant_column_dropped_with_warning(self):
        X, y = logistic_data(n=80, p=4, seed=6)
        X[:, 1] = 2.0
        with pytest.warns(UserWarning):
            fit = fit_lasso_logistic(X, y, folds=5, seed=0)
        assert fit.dropped_columns == [1]
        assert fit.coefficients[1] == 0.0


class TestRankVariables:
    def _fit_with(self, coefs):
        p = len(coefs)
        return LassoFit(
            response="x",
            coefficients=np.array(coefs, dtype=float),
            intercept=0.0,
            lambda_grid=np.array([1.0]),
            cv_deviance=np.array([0.0]),
            cv_se=np.array([0.0]),
            selected_lambda=1.0,
            selected_index=0,
            folds=10,
            kkt_residuals=np.array([0.0]),
            path_coefficients=np.zeros((1, p)),
            path_intercepts=np.zeros(1),
        )

    def test_single_dominant_variable(self):
        rep = rank_variables(self._fit_with([3.0, 0.2, 0.1, 0.05]))
        assert rep.top_set == [0]
        assert abs(rep.drop_ratio - 15.0) < 1e-9
        assert rep.significant

    def test_uniform_coefficients_not_significant(self):
        rep = rank_variables(self._fit_with([0.5, 0.5, 0.5, 0.5]))
        assert not rep.significant
        assert rep.drop_ratio == 1.0

    def test_all_zero_diagnostic(self):
        rep = rank_variables(self._fit_with([0.0, 0.0]))
        assert rep.top_set == []
        assert rep.diagnostic

    def test_ranking_is_permutation(self):
        X, y = logistic_data(n=120, p=12, strong=(2, 7), seed=8)
        fit = fit_lasso_logistic(X, y, folds=5, seed=0)
        order = fit.ranking()
        assert sorted(order.tolist()) == list(range(12))
