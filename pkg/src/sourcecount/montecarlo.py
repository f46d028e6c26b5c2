"""Seeded Monte Carlo harness: probability-of-correct-decision sweeps.

Every trial draws its snapshots from an independent counter-based stream
keyed by (seed, point index, trial index), so results are reproducible and
do not depend on how trials are scheduled across workers.  Aggregation is
a plain success count per point, which is associative and order-free.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .estimators import gmdl_estimate, rmdl_estimate
from .model import EstimatorConfig, ScenarioConfig, ScenarioError, SourceSpec, validate_scenario
from .signal_gen import RngStream, generate_snapshots
from .spectra import eig_hermitian, sample_covariance

AXIS_SNAPSHOTS = "snapshots"
AXIS_SEPARATION = "separation"

DEFAULT_TRIALS = 200
# log-spaced grid spanning the regimes where both estimators transition
DEFAULT_SNAPSHOT_GRID = tuple(int(v) for v in np.rint(np.geomspace(100, 20000, 10)))

CSV_COLUMNS = ("axis_value", "pcd_gmdl", "pcd_gmdl_ci", "pcd_rmdl", "pcd_rmdl_ci", "trials")


@dataclass(frozen=True)
class TrialOutcome:
    trial_id: int
    n_snapshots: int
    q_true: int
    q_gmdl: int
    q_rmdl: int
    rmdl_iterations_total: int


@dataclass(frozen=True)
class SweepPoint:
    axis_value: float
    pcd_gmdl: float
    pcd_gmdl_ci: float
    pcd_rmdl: float
    pcd_rmdl_ci: float
    trials: int


@dataclass(frozen=True)
class SweepResult:
    """PCD curves for both estimators along one sweep axis."""

    axis: str
    points: tuple[SweepPoint, ...]

    @property
    def axis_values(self) -> np.ndarray:
        return np.array([pt.axis_value for pt in self.points])

    @property
    def pcd_gmdl(self) -> np.ndarray:
        return np.array([pt.pcd_gmdl for pt in self.points])

    @property
    def pcd_rmdl(self) -> np.ndarray:
        return np.array([pt.pcd_rmdl for pt in self.points])


def worker_count() -> int:
    """Workers for the trial pool: SOURCECOUNT_THREADS if set, else CPU count."""
    env = os.environ.get("SOURCECOUNT_THREADS")
    if env is None:
        return os.cpu_count() or 1
    try:
        n = int(env)
    except ValueError as exc:
        raise ScenarioError(f"SOURCECOUNT_THREADS must be an integer, got {env!r}") from exc
    if n < 1:
        raise ScenarioError("SOURCECOUNT_THREADS must be >= 1")
    return n


def trial_stream(seed: int, point_idx: int, trial: int) -> RngStream:
    """The dedicated RNG stream for one (point, trial) cell of a sweep."""
    if not 0 <= trial < 1 << 32:
        raise ValueError("trial index out of range")
    return RngStream(seed=seed, stream_id=(point_idx << 32) | trial)


def binomial_half_width(pcd: float, trials: int) -> float:
    """95% normal-approximation half-width for a success proportion."""
    return 1.96 * math.sqrt(pcd * (1.0 - pcd) / trials)


def smooth_median3(values) -> np.ndarray:
    """3-point running median; endpoints pass through.

    Trend assertions on PCD curves run on this smoothed version so a single
    binomially unlucky point cannot flip them.
    """
    x = np.asarray(values, dtype=float)
    if x.size < 3:
        return x.copy()
    out = x.copy()
    out[1:-1] = np.median(np.stack([x[:-2], x[1:-1], x[2:]]), axis=0)
    return out


def run_trial(
    cfg: ScenarioConfig,
    n_snapshots: int,
    est: EstimatorConfig,
    rng: RngStream,
    trial_id: int = 0,
) -> TrialOutcome:
    """One simulated trial: draw snapshots, form R-hat, run both estimators."""
    block = generate_snapshots(cfg, n_snapshots, rng)
    R = sample_covariance(block)
    eigs = eig_hermitian(R)
    gmdl = gmdl_estimate(eigs.values, n_snapshots, est.penalty)
    rmdl_table, fits = rmdl_estimate(R, n_snapshots, est)
    return TrialOutcome(
        trial_id=trial_id,
        n_snapshots=n_snapshots,
        q_true=cfg.q,
        q_gmdl=gmdl.q_hat,
        q_rmdl=rmdl_table.q_hat,
        rmdl_iterations_total=sum(f.iterations for f in fits),
    )


def _run_point(
    cfg: ScenarioConfig,
    n_snapshots: int,
    axis_value: float,
    point_idx: int,
    trials: int,
    est: EstimatorConfig,
    seed: int,
) -> SweepPoint:
    def one(trial: int) -> TrialOutcome:
        return run_trial(cfg, n_snapshots, est, trial_stream(seed, point_idx, trial), trial)

    workers = worker_count()
    if workers > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=min(workers, trials)) as pool:
            outcomes = list(pool.map(one, range(trials)))
    else:
        outcomes = [one(t) for t in range(trials)]
    hits_gmdl = sum(1 for o in outcomes if o.q_gmdl == o.q_true)
    hits_rmdl = sum(1 for o in outcomes if o.q_rmdl == o.q_true)
    pcd_gmdl = hits_gmdl / trials
    pcd_rmdl = hits_rmdl / trials
    return SweepPoint(
        axis_value=axis_value,
        pcd_gmdl=pcd_gmdl,
        pcd_gmdl_ci=binomial_half_width(pcd_gmdl, trials),
        pcd_rmdl=pcd_rmdl,
        pcd_rmdl_ci=binomial_half_width(pcd_rmdl, trials),
        trials=trials,
    )


def _check_grid(values, what: str) -> list:
    values = list(values)
    if not values:
        raise ScenarioError(f"{what} must be non-empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ScenarioError(f"{what} must be strictly ascending")
    return values


def sweep_snapshots(
    cfg: ScenarioConfig,
    n_list=DEFAULT_SNAPSHOT_GRID,
    trials: int = DEFAULT_TRIALS,
    est: EstimatorConfig = EstimatorConfig(),
    seed: int = 0,
) -> SweepResult:
    """PCD of both estimators as the snapshot count grows, scenario fixed."""
    validate_scenario(cfg)
    n_list = _check_grid(n_list, "n_list")
    if any(int(n) != n or n < 2 for n in n_list):
        raise ScenarioError("n_list entries must be integers >= 2")
    if trials < 1:
        raise ScenarioError("trials must be >= 1")
    points = tuple(
        _run_point(cfg, int(n), float(n), i, trials, est, seed) for i, n in enumerate(n_list)
    )
    return SweepResult(axis=AXIS_SNAPSHOTS, points=points)


def separation_scenario(cfg_template: ScenarioConfig, rho_deg: float) -> ScenarioConfig:
    """Template with its three source directions replaced by [0, rho, 2*rho]."""
    if len(cfg_template.sources) != 3:
        raise ScenarioError("separation sweep needs a three-source template")
    doas = (0.0, float(rho_deg), 2.0 * float(rho_deg))
    sources = tuple(
        SourceSpec(doa_deg=d, power=s.power) for d, s in zip(doas, cfg_template.sources)
    )
    return validate_scenario(replace(cfg_template, sources=sources))


def sweep_separation(
    cfg_template: ScenarioConfig,
    rho_list_deg,
    n_snapshots: int,
    trials: int = DEFAULT_TRIALS,
    est: EstimatorConfig = EstimatorConfig(),
    seed: int = 0,
) -> SweepResult:
    """PCD as a function of the angular separation rho, DOAs at [0, rho, 2*rho]."""
    rho_list = _check_grid(rho_list_deg, "rho_list")
    if rho_list[0] <= 0:
        raise ScenarioError("rho_list entries must be positive")
    if n_snapshots < 2:
        raise ScenarioError("n_snapshots must be >= 2")
    if trials < 1:
        raise ScenarioError("trials must be >= 1")
    points = []
    for i, rho in enumerate(rho_list):
        cfg = separation_scenario(cfg_template, rho)
        points.append(_run_point(cfg, n_snapshots, float(rho), i, trials, est, seed))
    return SweepResult(axis=AXIS_SEPARATION, points=tuple(points))


def write_sweep_csv(result: SweepResult, dest) -> None:
    """Emit the sweep as CSV (header always present). dest: path or text stream."""
    if hasattr(dest, "write"):
        _write_csv_rows(result, dest)
        return
    with open(dest, "w", encoding="utf-8", newline="") as fh:
        _write_csv_rows(result, fh)


def _write_csv_rows(result: SweepResult, fh) -> None:
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for pt in result.points:
        fh.write(
            f"{pt.axis_value:g},{pt.pcd_gmdl:.6f},{pt.pcd_gmdl_ci:.6f},"
            f"{pt.pcd_rmdl:.6f},{pt.pcd_rmdl_ci:.6f},{pt.trials}\n"
        )
