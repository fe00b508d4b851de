"""Desk-scale SVD oracle and the exact projection / regression solutions.

The factorization here exists to *check* the iterative algorithms, and to
build synthetic data with a prescribed spectrum.  It is a one-sided Jacobi
SVD: simple, very accurate, and entirely adequate up to a couple thousand
rows or columns.  Nothing in the iterative pipeline depends on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch
from .matrix import DesignMatrix

__all__ = ["SvdFactors", "svd_small", "exact_projection", "exact_pcr", "RANK_CUTOFF"]

# Singular values below RANK_CUTOFF * sigma_1 are treated as exact zeros.
RANK_CUTOFF = 1e-12

_ORACLE_MAX_DIM = 2000


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD ``A = U diag(s) V^T`` with strictly positive, descending ``s``.

    ``U`` is n-by-r and ``V`` is d-by-r, both with orthonormal columns.
    """

    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray

    @property
    def rank(self) -> int:
        return self.singular_values.shape[0]

    def top_index(self, lam: float) -> int:
        """Number of singular values whose square is at least ``lam``."""
        if lam <= 0:
            raise ValueError(f"lambda must be positive, got {lam}")
        return int(np.sum(self.singular_values ** 2 >= lam))

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.singular_values) @ self.V.T


def _jacobi_orthogonalize(W, V, tol=1e-15, max_sweeps=64):
    """Rotate column pairs of W (and track V) until all pairs are orthogonal."""
    d = W.shape[1]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                wp = W[:, p]
                wq = W[:, q]
                app = wp @ wp
                aqq = wq @ wq
                apq = wp @ wq
                denom = math.sqrt(app * aqq)
                if denom == 0.0:
                    continue
                off = max(off, abs(apq) / denom)
                if abs(apq) <= tol * denom:
                    continue
                tau = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                new_p = c * wp - s * wq
                new_q = s * wp + c * wq
                W[:, p] = new_p
                W[:, q] = new_q
                vp = c * V[:, p] - s * V[:, q]
                vq = s * V[:, p] + c * V[:, q]
                V[:, p] = vp
                V[:, q] = vq
        if off <= tol:
            break


def svd_small(A: DesignMatrix) -> SvdFactors:
    """Exact thin SVD of a desk-scale matrix via one-sided Jacobi.

    Requires ``min(n, d) <= 2000`` and a nonzero matrix.  Singular values
    at or below ``RANK_CUTOFF * sigma_1`` are dropped, so the returned rank
    is the numerical rank under that cutoff.
    """
    if min(A.n_rows, A.n_cols) > _ORACLE_MAX_DIM:
        raise ValueError(f"SVD oracle is limited to min(n, d) <= {_ORACLE_MAX_DIM}")
    W = A.toarray()
    transposed = A.n_rows < A.n_cols
    if transposed:
        W = np.ascontiguousarray(W.T)
    V = np.eye(W.shape[1])
    _jacobi_orthogonalize(W, V)
    sig = np.linalg.norm(W, axis=0)
    order = np.argsort(sig, kind="stable")[::-1]
    sig = sig[order]
    if sig[0] == 0.0:
        raise ValueError("rank zero: cannot factor the zero matrix")
    r = int(np.sum(sig > RANK_CUTOFF * sig[0]))
    order = order[:r]
    sig = sig[:r]
    U = W[:, order] / sig
    V = V[:, order]
    if transposed:
        U, V = V, U
    sig = sig.copy()
    for arr in (U, sig, V):
        arr.setflags(write=False)
    return SvdFactors(U=U, singular_values=sig, V=V)


def _check_lambda_vec(F, lam, vec, length, what):
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    vec = np.ascontiguousarray(vec, dtype=np.float64)
    if vec.shape != (length,):
        raise DimensionMismatch(length, vec.shape[0] if vec.ndim == 1 else vec.shape, what=what)
    return vec


def exact_projection(F: SvdFactors, lam: float, y) -> np.ndarray:
    """Project ``y`` onto the span of principal components with squared value >= lam.

    Returns ``V_k V_k^T y`` where k counts singular values with
    ``sigma_k^2 >= lam``; the zero vector if none qualify.
    """
    y = _check_lambda_vec(F, lam, y, F.V.shape[0], "vector length")
    k = F.top_index(lam)
    if k == 0:
        return np.zeros_like(y)
    Vk = F.V[:, :k]
    return Vk @ (Vk.T @ y)


def exact_pcr(F: SvdFactors, lam: float, b) -> np.ndarray:
    """Exact principal component regression solution ``V_k S_k^{-1} U_k^T b``."""
    b = _check_lambda_vec(F, lam, b, F.U.shape[0], "vector length")
    k = F.top_index(lam)
    if k == 0:
        return np.zeros(F.V.shape[0])
    Uk = F.U[:, :k]
    return F.V[:, :k] @ ((Uk.T @ b) / F.singular_values[:k])
