"""Sample covariance, Hermitian eigendecomposition, and the Frobenius-optimal
projection of a Hermitian matrix onto the family "rank-q part plus a uniform
level on the trailing eigenspace".

Matrices are plain complex ndarrays; ``require_hermitian`` is the shared
entry-point check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_gen import SnapshotBlock


class NumericalError(RuntimeError):
    """A numerical operation failed (non-convergence, singular model, ...)."""


def require_hermitian(M: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Validate that M is square and conjugate-symmetric; return it as complex.

    The tolerance is relative to the largest entry magnitude (absolute for
    unit-scale data).
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    M = M.astype(complex, copy=False)
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise NumericalError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(M).max())) if M.size else 1.0
    if np.abs(M - M.conj().T).max() > tol * scale:
        raise ValueError("matrix is not Hermitian")
    return M


@dataclass(frozen=True)
class EigenSystem:
    """Descending real eigenvalues and orthonormal eigenvectors (as columns)."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def p(self) -> int:
        return self.values.size


def sample_covariance(block: SnapshotBlock) -> np.ndarray:
    """Empirical covariance (1/N) sum_t x(t) x(t)^H, symmetrized exactly."""
    x = block.data
    if block.n_snapshots < 1:
        raise ValueError("need at least one snapshot")
    R = (x @ x.conj().T) / block.n_snapshots
    return 0.5 * (R + R.conj().T)


def eig_hermitian(M: np.ndarray) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Ties in degenerate eigenspaces may resolve to any orthonormal basis;
    downstream quantities depend only on the invariant subspace.

    Raises
    ------
    NumericalError
        If the underlying QR iteration fails to converge.
    """
    M = require_hermitian(M)
    try:
        values, vectors = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    return EigenSystem(values=values[::-1], vectors=vectors[:, ::-1])


def project_truncated_spectrum(
    M: np.ndarray, q: int, floor: float
) -> tuple[np.ndarray, float]:
    """Closest (Frobenius) "rank-q plus uniform trailing level" fit to M.

    Returns ``(lowrank, sigma2)`` where ``sigma2`` is the mean of the p-q
    trailing eigenvalues (floored at ``floor`` so the implied model stays
    invertible) and ``lowrank`` keeps the leading q eigenpairs with their
    excess over sigma2, clamped at zero so the low-rank part stays PSD.
    """
    eigs = eig_hermitian(M)
    p = eigs.p
    if not 0 <= q < p:
        raise ValueError(f"q must satisfy 0 <= q < p={p}, got {q}")
    if not floor > 0:
        raise ValueError("floor must be positive")
    sigma2 = max(float(np.mean(eigs.values[q:])), floor)
    if q == 0:
        return np.zeros((p, p), dtype=complex), sigma2
    gains = np.maximum(eigs.values[:q] - sigma2, 0.0)
    V = eigs.vectors[:, :q]
    lowrank = (V * gains) @ V.conj().T
    return 0.5 * (lowrank + lowrank.conj().T), sigma2
