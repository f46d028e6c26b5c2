"""Estimate how many sources impinge on a uniform linear array.

Provides the classical eigenvalue-based criterion (``gmdl_estimate``), a
robust criterion fitted under per-sensor noise deviations
(``rmdl_estimate`` / ``rmdl_fit``), a seeded snapshot simulator, and a
Monte Carlo harness for probability-of-correct-decision sweeps.
"""

from .model import (
    AIC,
    DISTRIBUTIONS,
    GAUSSIAN,
    LAPLACIAN,
    MDL,
    PENALTIES,
    PRESET_NAMES,
    EstimatorConfig,
    NoiseProfile,
    ScenarioConfig,
    ScenarioError,
    SourceSpec,
    build_true_covariance,
    load_scenario,
    mismatch_vector,
    preset_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    validate_scenario,
    with_distribution,
)
from .signal_gen import (
    RngStream,
    SnapshotBlock,
    generate_snapshots,
    read_snapshots,
    sample_noise,
    sample_sources,
    steering_matrix,
    steering_vector,
    write_snapshots,
)
from .spectra import (
    EigenSystem,
    NumericalError,
    eig_hermitian,
    project_truncated_spectrum,
    require_hermitian,
    sample_covariance,
)
from .estimators import (
    CriterionTable,
    RmdlFit,
    enforce_nested_monotonicity,
    gaussian_neg_log_likelihood,
    gmdl_criterion,
    gmdl_estimate,
    identifiability_flag,
    rmdl_estimate,
    rmdl_fit,
)
from .montecarlo import (
    AXIS_SEPARATION,
    AXIS_SNAPSHOTS,
    DEFAULT_SNAPSHOT_GRID,
    DEFAULT_TRIALS,
    SweepPoint,
    SweepResult,
    TrialOutcome,
    binomial_half_width,
    run_trial,
    separation_scenario,
    smooth_median3,
    sweep_separation,
    sweep_snapshots,
    trial_stream,
    worker_count,
    write_sweep_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AIC",
    "AXIS_SEPARATION",
    "AXIS_SNAPSHOTS",
    "CriterionTable",
    "DEFAULT_SNAPSHOT_GRID",
    "DEFAULT_TRIALS",
    "DISTRIBUTIONS",
    "EigenSystem",
    "EstimatorConfig",
    "GAUSSIAN",
    "LAPLACIAN",
    "MDL",
    "NoiseProfile",
    "NumericalError",
    "PENALTIES",
    "PRESET_NAMES",
    "RmdlFit",
    "RngStream",
    "ScenarioConfig",
    "ScenarioError",
    "SnapshotBlock",
    "SourceSpec",
    "SweepPoint",
    "SweepResult",
    "TrialOutcome",
    "binomial_half_width",
    "build_true_covariance",
    "eig_hermitian",
    "enforce_nested_monotonicity",
    "gaussian_neg_log_likelihood",
    "generate_snapshots",
    "gmdl_criterion",
    "gmdl_estimate",
    "identifiability_flag",
    "load_scenario",
    "mismatch_vector",
    "preset_scenario",
    "project_truncated_spectrum",
    "read_snapshots",
    "require_hermitian",
    "rmdl_estimate",
    "rmdl_fit",
    "run_trial",
    "sample_covariance",
    "sample_noise",
    "sample_sources",
    "save_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "separation_scenario",
    "smooth_median3",
    "steering_matrix",
    "steering_vector",
    "sweep_separation",
    "sweep_snapshots",
    "trial_stream",
    "validate_scenario",
    "with_distribution",
    "worker_count",
    "write_sweep_csv",
    "write_snapshots",
]
