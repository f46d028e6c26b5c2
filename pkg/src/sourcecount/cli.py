"""Command-line front end.

Subcommands: eigvals (true-covariance spectrum of a scenario), fit (one
low-rank + diagonal-noise fit at a chosen q), estimate (both criteria on one
simulated batch), sweep-n and sweep-rho (Monte Carlo PCD curves, CSV out).

--scenario takes either a JSON file path or a bundled preset name
(fig1 .. fig5).  Exit codes: 0 success, 2 configuration or usage error,
3 numerical failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .estimators import (
    CriterionTable,
    gmdl_estimate,
    identifiability_flag,
    rmdl_estimate,
    rmdl_fit,
)
from .model import (
    DISTRIBUTIONS,
    EstimatorConfig,
    PENALTIES,
    PRESET_NAMES,
    ScenarioConfig,
    ScenarioError,
    build_true_covariance,
    load_scenario,
    preset_scenario,
    with_distribution,
)
from .montecarlo import (
    DEFAULT_SNAPSHOT_GRID,
    DEFAULT_TRIALS,
    SweepResult,
    sweep_separation,
    sweep_snapshots,
    write_sweep_csv,
)
from .signal_gen import RngStream, generate_snapshots
from .spectra import NumericalError, eig_hermitian, sample_covariance

import argparse


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _resolve_scenario(name_or_path: str, dist: str | None = None) -> ScenarioConfig:
    if name_or_path in PRESET_NAMES:
        cfg = preset_scenario(name_or_path)
    else:
        path = Path(name_or_path)
        if not path.is_file():
            raise ScenarioError(
                f"scenario {name_or_path!r} is neither a preset ({', '.join(PRESET_NAMES)}) "
                "nor an existing file"
            )
        cfg = load_scenario(path)
    if dist is not None:
        cfg = with_distribution(cfg, dist)
    return cfg


def _simulated_covariance(cfg: ScenarioConfig, n: int, seed: int) -> np.ndarray:
    block = generate_snapshots(cfg, n, RngStream(seed=seed))
    return sample_covariance(block)


def cmd_eigvals(args) -> int:
    cfg = _resolve_scenario(args.scenario)
    eigs = eig_hermitian(build_true_covariance(cfg))
    for value in eigs.values:
        print(f"{value:#.4g}")
    return 0


def cmd_fit(args) -> int:
    cfg = _resolve_scenario(args.scenario, args.dist)
    q = cfg.q if args.q is None else args.q
    R = _simulated_covariance(cfg, args.n, args.seed)
    fit = rmdl_fit(R, q, EstimatorConfig())
    flagged = identifiability_flag(fit)
    print(f"q = {fit.q}  p = {cfg.p}  N = {args.n}")
    print(f"iterations = {fit.iterations}  converged = {'yes' if fit.converged else 'no'}")
    print(f"ls_error = {fit.ls_error:.6e}")
    print(f"sigma2 = {fit.sigma2:.6f}")
    print("w = " + np.array2string(fit.w, precision=5, separator=", ", suppress_small=True))
    print(f"sum(w) = {float(fit.w.sum()):.3e}")
    print("error trace: " + " ".join(f"{e:.6e}" for e in fit.error_trace))
    print("flagged sensors: " + (", ".join(str(j) for j in flagged) if flagged else "none"))
    return 0


def _print_table(name: str, penalty: str, table: CriterionTable) -> None:
    print(f"{name} (penalty={penalty})")
    print(f"{'q':>4}  {'neg_log_likelihood':>20}  {'penalty':>14}  {'total':>20}")
    for q, nll, pen, total in table.rows:
        print(f"{q:>4}  {nll:20.6f}  {pen:14.6f}  {total:20.6f}")


def _write_estimate_csv(path, gmdl: CriterionTable, rmdl: CriterionTable) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("estimator,q,neg_log_likelihood,penalty,total\n")
        for name, table in (("gmdl", gmdl), ("rmdl", rmdl)):
            for q, nll, pen, total in table.rows:
                fh.write(f"{name},{q},{nll:.10g},{pen:.10g},{total:.10g}\n")


def cmd_estimate(args) -> int:
    cfg = _resolve_scenario(args.scenario, args.dist)
    est = EstimatorConfig(penalty=args.penalty)
    R = _simulated_covariance(cfg, args.n, args.seed)
    eigs = eig_hermitian(R)
    gmdl = gmdl_estimate(eigs.values, args.n, args.penalty)
    rmdl, _ = rmdl_estimate(R, args.n, est)
    _print_table("GMDL", args.penalty, gmdl)
    _print_table("RMDL", args.penalty, rmdl)
    print(f"q_gmdl = {gmdl.q_hat}")
    print(f"q_rmdl = {rmdl.q_hat}")
    if args.out:
        _write_estimate_csv(args.out, gmdl, rmdl)
    return 0


def _emit_sweep(result: SweepResult, out: str | None, label: str) -> None:
    for pt in result.points:
        print(
            f"{label}={pt.axis_value:g}  "
            f"pcd_gmdl={pt.pcd_gmdl:.3f} ci={pt.pcd_gmdl_ci:.3f}  "
            f"pcd_rmdl={pt.pcd_rmdl:.3f} ci={pt.pcd_rmdl_ci:.3f}  "
            f"trials={pt.trials}"
        )
    if out:
        write_sweep_csv(result, out)
    else:
        print()
        write_sweep_csv(result, sys.stdout)


def cmd_sweep_n(args) -> int:
    cfg = _resolve_scenario(args.scenario, args.dist)
    est = EstimatorConfig(penalty=args.penalty)
    result = sweep_snapshots(cfg, args.n_list, args.trials, est, args.seed)
    _emit_sweep(result, args.out, "N")
    return 0


def cmd_sweep_rho(args) -> int:
    cfg = _resolve_scenario(args.scenario, args.dist)
    est = EstimatorConfig(penalty=args.penalty)
    result = sweep_separation(cfg, args.rho_list, args.n, args.trials, est, args.seed)
    _emit_sweep(result, args.out, "rho")
    return 0


def _add_common(sub, *, snapshots: bool) -> None:
    sub.add_argument("--scenario", required=True,
                     help=f"scenario JSON path or preset: {', '.join(PRESET_NAMES)}")
    if snapshots:
        sub.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        sub.add_argument("--dist", choices=DISTRIBUTIONS, default=None,
                         help="override the scenario's source distribution")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sourcecount",
        description="Estimate the number of sources impinging on a uniform linear array.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eig = sub.add_parser("eigvals", help="print true-covariance eigenvalues, descending")
    _add_common(p_eig, snapshots=False)
    p_eig.set_defaults(func=cmd_eigvals)

    p_fit = sub.add_parser("fit", help="fit the noise-robust covariance model at one q")
    _add_common(p_fit, snapshots=True)
    p_fit.add_argument("--n", type=int, required=True, help="number of snapshots")
    p_fit.add_argument("--q", type=int, default=None,
                       help="candidate source count (default: the scenario's true count)")
    p_fit.set_defaults(func=cmd_fit)

    p_est = sub.add_parser("estimate", help="run both estimators on one simulated batch")
    _add_common(p_est, snapshots=True)
    p_est.add_argument("--n", type=int, required=True, help="number of snapshots")
    p_est.add_argument("--penalty", choices=PENALTIES, default="mdl")
    p_est.add_argument("--out", default=None, help="also write the per-q table as CSV")
    p_est.set_defaults(func=cmd_estimate)

    p_sn = sub.add_parser("sweep-n", help="PCD vs snapshot count")
    _add_common(p_sn, snapshots=True)
    p_sn.add_argument("--n-list", type=_int_list, default=list(DEFAULT_SNAPSHOT_GRID),
                      help="comma-separated snapshot counts "
                           f"(default {','.join(str(n) for n in DEFAULT_SNAPSHOT_GRID)})")
    p_sn.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p_sn.add_argument("--penalty", choices=PENALTIES, default="mdl")
    p_sn.add_argument("--out", default=None, help="CSV destination (default: stdout)")
    p_sn.set_defaults(func=cmd_sweep_n)

    p_sr = sub.add_parser("sweep-rho", help="PCD vs source separation, DOAs [0, rho, 2*rho]")
    _add_common(p_sr, snapshots=True)
    p_sr.add_argument("--rho-list", type=_float_list, required=True,
                      help="comma-separated separations in degrees")
    p_sr.add_argument("--n", type=int, required=True, help="snapshots per trial")
    p_sr.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p_sr.add_argument("--penalty", choices=PENALTIES, default="mdl")
    p_sr.add_argument("--out", default=None, help="CSV destination (default: stdout)")
    p_sr.set_defaults(func=cmd_sweep_rho)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
