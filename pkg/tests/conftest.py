"""Shared helpers: random Hermitian inputs and the randomized projection oracle."""

import numpy as np

from sourcecount import eig_hermitian, project_truncated_spectrum


def random_psd(gen: np.random.Generator, p: int, rank: int | None = None) -> np.ndarray:
    """Random Hermitian PSD matrix with O(1) eigenvalues (full rank unless given)."""
    k = 2 * p if rank is None else rank
    A = gen.standard_normal((p, k)) + 1j * gen.standard_normal((p, k))
    M = (A @ A.conj().T) / max(k, 1)
    return 0.5 * (M + M.conj().T)


def random_frames(gen: np.random.Generator, batch: int, p: int, q: int) -> np.ndarray:
    """batch orthonormal p x q frames via QR of complex Gaussian matrices."""
    A = gen.standard_normal((batch, p, q)) + 1j * gen.standard_normal((batch, p, q))
    Q, _ = np.linalg.qr(A)
    return Q


def family_errors(M: np.ndarray, V: np.ndarray, gains: np.ndarray, level: np.ndarray) -> np.ndarray:
    """Squared Frobenius error of candidates sum_i g_i c_i c_i^H + l * (I - C C^H).

    V: (B, p, q) orthonormal frames, gains: (B, q), level: (B,).  Expanding
    around D = M - l*I, the orthonormality of each frame collapses the
    rank-q term to a sum over its own diagonal, so no p x p candidate matrix
    is ever formed.
    """
    p = M.shape[0]
    norm2 = float(np.linalg.norm(M)) ** 2
    tr = float(np.trace(M).real)
    base = norm2 - 2.0 * level * tr + p * level**2
    if V.shape[2] == 0:
        return base
    T = np.einsum("bpi,pr,bri->bi", V.conj(), M, V).real
    h = gains - level[:, None]
    return base - 2.0 * np.sum(h * (T - level[:, None]), axis=1) + np.sum(h * h, axis=1)


def projection_error(M: np.ndarray, q: int, floor: float = 1e-300) -> float:
    """Squared Frobenius error attained by project_truncated_spectrum."""
    lowrank, sigma2 = project_truncated_spectrum(M, q, floor)
    p = M.shape[0]
    resid = M - lowrank - sigma2 * np.eye(p)
    return float(np.linalg.norm(resid)) ** 2


def oracle_candidates(
    gen: np.random.Generator, M: np.ndarray, q: int, batch: int
) -> np.ndarray:
    """Candidate errors drawn from the model family: a rank-q part with
    per-direction gains riding on a positive common noise level, so every
    candidate is a matrix some source-plus-noise covariance could equal
    (gains >= level > 0).  Half are global random draws, half perturb the
    eigendecomposition solution, the regime where any beat would be found.
    """
    p = M.shape[0]
    eigs = eig_hermitian(M)
    hi = float(eigs.values[0])
    lo = float(eigs.values[-1])
    span = max(hi - lo, abs(hi), 1.0)

    n_global = batch // 2
    n_local = batch - n_global

    Vg = random_frames(gen, n_global, p, q)
    level_g = gen.uniform(1e-12, max(hi, 1.0), size=n_global)
    gains_g = level_g[:, None] + gen.uniform(0.0, 1.5 * span, size=(n_global, q))
    err_g = family_errors(M, Vg, gains_g, level_g)

    V_opt = eigs.vectors[:, :q]
    level_opt = max(float(np.mean(eigs.values[q:])), 1e-300)
    gains_opt = np.maximum(eigs.values[:q], level_opt)
    eps = np.repeat([1e-2, 1e-4, 1e-6], n_local // 3 + 1)[:n_local, None, None]
    noise = gen.standard_normal((n_local, p, q)) + 1j * gen.standard_normal((n_local, p, q))
    Vl, _ = np.linalg.qr(V_opt[None, :, :] + eps * span * noise)
    level_l = np.maximum(
        level_opt + eps[:, 0, 0] * span * gen.standard_normal(n_local), 1e-15 * span
    )
    gains_l = np.maximum(
        gains_opt[None, :] + eps[:, :, 0] * span * gen.standard_normal((n_local, q)),
        level_l[:, None],
    )
    err_l = family_errors(M, Vl, gains_l, level_l)

    return np.concatenate([err_g, err_l])
