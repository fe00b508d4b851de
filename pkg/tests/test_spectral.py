import numpy as np
import pytest

from ridgeproj import (
    ConvergenceFailure,
    DesignMatrix,
    matrix_stats,
    spectral_norm_estimate,
    svd_small,
)
from helpers import random_dense


class TestSpectralNormEstimate:
    def test_diagonal(self):
        A = DesignMatrix.from_dense(np.diag([3.0, 1.0]))
        est = spectral_norm_estimate(A, tol=1e-6, seed=0)
        assert abs(est - 3.0) <= 3e-6

    def test_identity(self):
        A = DesignMatrix.from_dense(np.eye(4))
        assert spectral_norm_estimate(A, tol=1e-6, seed=1) == pytest.approx(1.0, abs=1e-9)

    def test_against_svd_oracle(self):
        A = random_dense(np.random.default_rng(42), 100, 60)
        sigma1 = svd_small(A).singular_values[0]
        for tol in (1e-3, 1e-5):
            est = spectral_norm_estimate(A, tol=tol, seed=3)
            assert abs(est - sigma1) <= tol * sigma1

    def test_small_gap_matrix(self):
        # Close top singular values stress the stopping rule.
        A = DesignMatrix.from_dense(np.diag([1.0, 0.999, 0.9, 0.1]))
        est = spectral_norm_estimate(A, tol=1e-4, seed=5)
        assert abs(est - 1.0) <= 1e-4

    def test_deterministic(self):
        A = random_dense(np.random.default_rng(0), 30, 20)
        a = spectral_norm_estimate(A, tol=1e-4, seed=9)
        b = spectral_norm_estimate(A, tol=1e-4, seed=9)
        assert a == b

    def test_nonconvergence_reports_rayleigh(self):
        A = random_dense(np.random.default_rng(1), 30, 20)
        with pytest.raises(ConvergenceFailure) as exc:
            spectral_norm_estimate(A, tol=1e-12, max_iters=2, seed=0)
        assert exc.value.diagnostic is not None

    def test_tol_domain(self):
        A = DesignMatrix.from_dense(np.eye(2))
        for bad in (0.0, 1.0, -0.5):
            with pytest.raises(ValueError):
                spectral_norm_estimate(A, tol=bad)


class TestMatrixStats:
    def test_kappa_identity(self):
        A = random_dense(np.random.default_rng(2), 25, 15)
        stats = matrix_stats(A, lam=0.7)
        assert stats.kappa_lambda == stats.sigma1_estimate ** 2 / 0.7

    def test_sigma1_inflated_above_truth(self):
        A = random_dense(np.random.default_rng(6), 40, 25)
        sigma1 = svd_small(A).singular_values[0]
        stats = matrix_stats(A, lam=1.0, tol=1e-3)
        assert stats.sigma1_estimate >= sigma1 * (1.0 - 1e-3)
        assert stats.sigma1_estimate <= sigma1 * (1.0 + 3e-3)

    def test_stable_rank_range(self):
        A = random_dense(np.random.default_rng(3), 30, 18)
        stats = matrix_stats(A, lam=1.0)
        assert 1.0 <= stats.stable_rank * (1.0 + 5e-3) <= 18 * (1.0 + 5e-3)

    def test_lambda_guard(self):
        A = random_dense(np.random.default_rng(4), 10, 6)
        stats = matrix_stats(A, lam=0.5)
        with pytest.raises(ValueError, match="lambda"):
            stats.check_lambda(0.25)
