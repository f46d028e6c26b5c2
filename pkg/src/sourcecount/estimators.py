"""Source-count estimators.

Two criteria over candidate source counts q = 0 .. p-1:

* ``gmdl_estimate``: the classical closed-form criterion built from the
  sample-covariance eigenvalues, which presumes a common noise level across
  sensors.
* ``rmdl_estimate``: the robust criterion whose covariance model adds a
  zero-sum vector of per-sensor noise deviations.  Its per-q parameters are
  fitted by ``rmdl_fit``, an alternating least-squares loop that provably
  decreases the squared Frobenius error of the covariance fit at every
  iteration.

Both return a :class:`CriterionTable`; the argmin breaks ties toward the
smallest q, which also operationally resolves the non-identifiable points of
the parameter space (a source visible on a single sensor is indistinguishable
from a raised noise level there; ``identifiability_flag`` screens for that
configuration).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import AIC, MDL, EstimatorConfig, PENALTIES
from .spectra import NumericalError, eig_hermitian, require_hermitian


@dataclass(frozen=True)
class RmdlFit:
    """Fitted low-rank-plus-diagonal covariance model for one candidate q.

    ``error_trace[j]`` is the squared Frobenius error after iteration j+1;
    it is non-increasing.  ``w_sum_trace`` records sum(w) per iteration
    (zero up to rounding, since the residual extraction preserves the trace).
    """

    q: int
    lowrank: np.ndarray
    sigma2: float
    w: np.ndarray
    ls_error: float
    error_trace: np.ndarray
    w_sum_trace: np.ndarray
    iterations: int
    converged: bool

    def model_covariance(self) -> np.ndarray:
        """The fitted covariance lowrank + sigma2*I + diag(w)."""
        return self.lowrank + np.diag(self.sigma2 + self.w).astype(complex)


@dataclass(frozen=True)
class CriterionTable:
    """Per-q criterion values and the selected source count.

    ``total[q] = neg_log_likelihood[q] + penalty[q]`` exactly; ``q_hat`` is
    the argmin of ``total`` with ties broken toward smaller q.
    """

    neg_log_likelihood: np.ndarray
    penalty: np.ndarray
    total: np.ndarray
    q_hat: int

    @property
    def rows(self) -> list[tuple[int, float, float, float]]:
        return [
            (q, float(self.neg_log_likelihood[q]), float(self.penalty[q]), float(self.total[q]))
            for q in range(self.total.size)
        ]


def _check_penalty(penalty: str) -> str:
    if penalty not in PENALTIES:
        raise ValueError(f"penalty must be one of {PENALTIES}, got {penalty!r}")
    return penalty


def _gmdl_parts(eigs: np.ndarray, n_snapshots: int, q: int, penalty: str) -> tuple[float, float]:
    p = eigs.size
    tail = eigs[q:]
    loglik = -n_snapshots * float(np.sum(np.log(tail)) - (p - q) * math.log(float(np.mean(tail))))
    n_params = q * (2 * p - q) + 1
    if penalty == MDL:
        pen = 0.5 * n_params * math.log(n_snapshots)
    else:
        pen = float(n_params)
    return loglik, pen


def _validate_gmdl_inputs(eigs, n_snapshots: int) -> np.ndarray:
    eigs = np.asarray(eigs, dtype=float)
    if eigs.ndim != 1 or eigs.size < 2:
        raise ValueError("expected a 1-D vector of at least two eigenvalues")
    if np.any(~np.isfinite(eigs)) or np.any(eigs <= 0):
        raise NumericalError("eigenvalues must be positive and finite")
    if n_snapshots < 2:
        raise ValueError("need at least two snapshots")
    return eigs


def gmdl_criterion(eigs, n_snapshots: int, q: int, penalty: str = MDL) -> float:
    """Closed-form criterion value at candidate q from descending eigenvalues.

    The likelihood term is -N*log of the ratio between the geometric and
    arithmetic means (to the power p-q) of the trailing p-q eigenvalues; it
    is nonnegative by AM-GM and zero exactly when they are all equal.  The
    default penalty is 0.5*(q*(2p-q)+1)*log N.
    """
    eigs = _validate_gmdl_inputs(eigs, n_snapshots)
    if not 0 <= q < eigs.size:
        raise ValueError(f"q must satisfy 0 <= q < p={eigs.size}, got {q}")
    loglik, pen = _gmdl_parts(eigs, n_snapshots, q, _check_penalty(penalty))
    return loglik + pen


def gmdl_estimate(eigs, n_snapshots: int, penalty: str = MDL) -> CriterionTable:
    """Evaluate the closed-form criterion for q = 0 .. p-1 and take the argmin."""
    eigs = _validate_gmdl_inputs(eigs, n_snapshots)
    _check_penalty(penalty)
    p = eigs.size
    parts = [_gmdl_parts(eigs, n_snapshots, q, penalty) for q in range(p)]
    loglik = np.array([a for a, _ in parts])
    pen = np.array([b for _, b in parts])
    total = loglik + pen
    return CriterionTable(
        neg_log_likelihood=loglik,
        penalty=pen,
        total=total,
        q_hat=int(np.argmin(total)),
    )


def rmdl_fit(R: np.ndarray, q: int, cfg: EstimatorConfig = EstimatorConfig()) -> RmdlFit:
    """Least-squares fit of lowrank + sigma2*I + diag(w) to R at candidate q.

    Alternates between two closed-form updates, starting from w = 0:

    1. eigendecompose E = R - diag(w); keep the leading q eigenpairs above
       the trailing-eigenvalue mean (the white-noise-model estimate);
    2. absorb the diagonal of the residual into w, recentred to sum to
       zero (the noise deviations are trace-free by definition).

    Each half-step is the exact minimizer for its parameter group over
    the constrained family, so the squared Frobenius error never
    increases and w stays zero-sum at every iteration.  Iteration stops once the
    error is an exact fit at the configured relative tolerance or its
    relative decrease stalls below ``cfg.tol_rel``; hitting ``cfg.max_iter``
    first returns ``converged=False`` with the last iterate.
    """
    R = require_hermitian(R)
    p = R.shape[0]
    if not 0 <= q < p:
        raise ValueError(f"q must satisfy 0 <= q < p={p}, got {q}")
    trace = float(np.trace(R).real)
    floor = cfg.eig_floor * (trace / p if trace > 0 else 1.0)
    scale = float(np.linalg.norm(R)) ** 2
    diag_R = np.diag(R).real
    m = p - q

    w = np.zeros(p)
    errors: list[float] = []
    w_sums: list[float] = []
    converged = False
    prev_err = math.inf
    lowrank = np.zeros((p, p), dtype=complex)
    sigma2 = floor
    E = np.empty((p, p), dtype=complex)
    for iteration in range(1, cfg.max_iter + 1):
        # Inlined projection (same formulas as project_truncated_spectrum);
        # E stays Hermitian by construction, so per-call validation is skipped
        # on this hot path.
        np.copyto(E, R)
        E.reshape(-1)[:: p + 1] -= w
        values, vectors = np.linalg.eigh(E)
        sigma2 = max(float(values[:m].mean()), floor)
        if q:
            kept = vectors[:, m:]
            lowrank = (kept * np.maximum(values[m:] - sigma2, 0.0)) @ kept.conj().T
        w = diag_R - lowrank.diagonal().real - sigma2
        # Unconstrained, this update is already zero-sum whenever the
        # sigma2 floor is slack; when the floor binds it is not, and the
        # recentring below is what keeps the iterate inside the family.
        w -= w.mean()
        resid = R - lowrank
        resid.reshape(-1)[:: p + 1] -= sigma2 + w
        err = float(np.vdot(resid, resid).real)
        errors.append(err)
        w_sums.append(float(w.sum()))
        stalled = math.isfinite(prev_err) and prev_err - err <= cfg.tol_rel * prev_err
        if err <= cfg.tol_rel * scale or stalled:
            converged = True
            break
        prev_err = err
    lowrank = 0.5 * (lowrank + lowrank.conj().T)
    return RmdlFit(
        q=q,
        lowrank=lowrank,
        sigma2=sigma2,
        w=w,
        ls_error=errors[-1],
        error_trace=np.array(errors),
        w_sum_trace=np.array(w_sums),
        iterations=len(errors),
        converged=converged,
    )


def gaussian_neg_log_likelihood(R: np.ndarray, model: np.ndarray, n_snapshots: int) -> float:
    """N * (log det(model) + trace(model^{-1} R)), constants dropped.

    Raises
    ------
    NumericalError
        If the model covariance is singular or not positive definite.
    """
    R = require_hermitian(R)
    model = require_hermitian(model)
    try:
        chol = np.linalg.cholesky(model)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"model covariance is not positive definite: {exc}") from exc
    logdet = 2.0 * float(np.sum(np.log(np.diag(chol).real)))
    trace_term = float(np.trace(np.linalg.solve(model, R)).real)
    return n_snapshots * (logdet + trace_term)


def enforce_nested_monotonicity(neg_log_likelihoods) -> np.ndarray:
    """Running minimum over q: the models are nested, so if the fitted
    likelihood at q+1 came out worse than at q, the q-source fit (which lies
    inside the (q+1)-source family) is used in its place."""
    return np.minimum.accumulate(np.asarray(neg_log_likelihoods, dtype=float))


def rmdl_estimate(
    R: np.ndarray, n_snapshots: int, cfg: EstimatorConfig = EstimatorConfig()
) -> tuple[CriterionTable, list[RmdlFit]]:
    """Robust criterion over q = 0 .. p-1 from the sample covariance.

    Each candidate q gets an ``rmdl_fit``; the Gaussian negative
    log-likelihood of the fitted model is made non-increasing in q (nested
    hypotheses) before adding the penalty 0.5*(q*(2p-q)+p)*log N (or its AIC
    variant q*(2p-q)+p).
    """
    R = require_hermitian(R)
    if n_snapshots < 2:
        raise ValueError("need at least two snapshots")
    _check_penalty(cfg.penalty)
    p = R.shape[0]
    fits = [rmdl_fit(R, q, cfg) for q in range(p)]
    raw_nll = [gaussian_neg_log_likelihood(R, f.model_covariance(), n_snapshots) for f in fits]
    nll = enforce_nested_monotonicity(raw_nll)
    q_range = np.arange(p)
    n_params = q_range * (2 * p - q_range) + p
    if cfg.penalty == MDL:
        pen = 0.5 * n_params * math.log(n_snapshots)
    else:
        pen = n_params.astype(float)
    total = nll + pen
    table = CriterionTable(
        neg_log_likelihood=nll,
        penalty=pen,
        total=total,
        q_hat=int(np.argmin(total)),
    )
    return table, fits


def identifiability_flag(fit: RmdlFit, tol: float = 1e-6) -> list[int]:
    """Indices of sensors whose basis vector lies in the fitted signal subspace.

    A source received at exactly one sensor cannot be told apart from a
    raised noise level there, so a projector row this close to a basis
    vector marks the fit as sitting at (or near) a non-identifiable point.
    Sensor indices are 0-based.
    """
    eigs = eig_hermitian(fit.lowrank)
    rank_tol = 1e-12 * max(1.0, float(eigs.values[0]) if eigs.p else 1.0)
    rank = int(np.sum(eigs.values > rank_tol))
    if rank == 0:
        return []
    V = eigs.vectors[:, :rank]
    proj_norms = np.linalg.norm(V, axis=1)
    return [int(j) for j in np.nonzero(proj_norms >= 1.0 - tol)[0]]
