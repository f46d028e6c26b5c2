"""Scenario descriptions and the ground-truth covariance they induce.

A scenario is a uniform linear array of ``p`` sensors, a list of narrowband
sources (direction of arrival in degrees, linear power), and a noise profile
consisting of a nominal power ``sigma2`` plus a zero-sum vector ``w`` of
per-sensor deviations.  The received-signal covariance is

    R = A diag(powers) A^H + sigma2 * I + diag(w)

with ``A`` the steering matrix of the array.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

GAUSSIAN = "gaussian"
LAPLACIAN = "laplacian"
DISTRIBUTIONS = (GAUSSIAN, LAPLACIAN)

MDL = "mdl"
AIC = "aic"
PENALTIES = (MDL, AIC)


class ScenarioError(ValueError):
    """A scenario or estimator configuration violates an invariant."""


@dataclass(frozen=True)
class SourceSpec:
    """One narrowband source: direction of arrival (degrees) and linear power."""

    doa_deg: float
    power: float


@dataclass(frozen=True)
class NoiseProfile:
    """Nominal noise power plus zero-sum per-sensor deviations.

    ``w[i]`` is the difference between sensor i's noise power and the nominal
    ``sigma2``; by definition the deviations sum to zero.
    """

    sigma2: float
    w: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(float(x) for x in self.w))

    def sensor_powers(self) -> np.ndarray:
        """Per-sensor noise powers sigma2 + w."""
        return self.sigma2 + np.asarray(self.w)


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of a synthetic experiment."""

    p: int
    sources: tuple[SourceSpec, ...]
    noise: NoiseProfile
    distribution: str = GAUSSIAN

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))

    @property
    def q(self) -> int:
        """True number of sources."""
        return len(self.sources)

    def doas_deg(self) -> np.ndarray:
        return np.array([s.doa_deg for s in self.sources], dtype=float)

    def powers(self) -> np.ndarray:
        return np.array([s.power for s in self.sources], dtype=float)


@dataclass(frozen=True)
class EstimatorConfig:
    """Knobs for the iterative low-rank-plus-diagonal fit and the criteria.

    ``eig_floor`` is a relative floor: the noise-power estimate is never
    allowed below ``eig_floor * trace(R)/p``, which keeps the fitted model
    covariance invertible for likelihood evaluation.
    """

    penalty: str = MDL
    max_iter: int = 200
    tol_rel: float = 1e-10
    eig_floor: float = 1e-12

    def __post_init__(self):
        if self.penalty not in PENALTIES:
            raise ScenarioError(f"penalty must be one of {PENALTIES}, got {self.penalty!r}")
        if self.max_iter < 1:
            raise ScenarioError("max_iter must be >= 1")
        if not self.tol_rel > 0:
            raise ScenarioError("tol_rel must be > 0")
        if not self.eig_floor > 0:
            raise ScenarioError("eig_floor must be > 0")


def validate_scenario(cfg: ScenarioConfig) -> ScenarioConfig:
    """Check every scenario invariant; return the config unchanged if valid.

    Raises
    ------
    ScenarioError
        Describing the first violated invariant.
    """
    if int(cfg.p) != cfg.p or cfg.p < 2:
        raise ScenarioError(f"sensor count p must be an integer >= 2, got {cfg.p}")
    if cfg.q >= cfg.p:
        raise ScenarioError(f"number of sources ({cfg.q}) must be < p ({cfg.p})")
    doas = [s.doa_deg for s in cfg.sources]
    if len(set(doas)) != len(doas):
        raise ScenarioError("source DOAs must be distinct")
    for s in cfg.sources:
        if not np.isfinite(s.power) or s.power <= 0:
            raise ScenarioError(f"source power must be positive and finite, got {s.power}")
        if not np.isfinite(s.doa_deg) or not -90.0 <= s.doa_deg <= 90.0:
            raise ScenarioError(f"DOA must lie in [-90, 90] degrees, got {s.doa_deg}")
    noise = cfg.noise
    if not np.isfinite(noise.sigma2) or noise.sigma2 <= 0:
        raise ScenarioError(f"sigma2 must be positive and finite, got {noise.sigma2}")
    w = np.asarray(noise.w, dtype=float)
    if w.shape != (cfg.p,):
        raise ScenarioError(f"w must have length p={cfg.p}, got length {w.size}")
    if not np.all(np.isfinite(w)):
        raise ScenarioError("w entries must be finite")
    tol = 1e-12 * max(noise.sigma2, float(np.abs(w).sum()))
    if abs(float(w.sum())) > tol:
        raise ScenarioError("w must sum to zero")
    powers = noise.sigma2 + w
    if np.any(powers <= 0):
        bad = int(np.argmin(powers))
        raise ScenarioError(f"sensor {bad} has nonpositive noise power sigma2 + w = {powers[bad]}")
    if cfg.distribution not in DISTRIBUTIONS:
        raise ScenarioError(f"distribution must be one of {DISTRIBUTIONS}, got {cfg.distribution!r}")
    return cfg


def build_true_covariance(cfg: ScenarioConfig) -> np.ndarray:
    """Ground-truth covariance A diag(powers) A^H + sigma2*I + diag(w).

    Sources are mutually independent, so the source covariance is diagonal.
    The result is Hermitian positive definite.
    """
    from .signal_gen import steering_matrix

    validate_scenario(cfg)
    A = steering_matrix(cfg.doas_deg(), cfg.p)
    R = (A * cfg.powers()) @ A.conj().T
    R += np.diag(cfg.noise.sensor_powers()).astype(complex)
    return 0.5 * (R + R.conj().T)


# ---------------------------------------------------------------------------
# JSON scenario files (field names mirror the dataclasses; angles in degrees,
# powers linear)
# ---------------------------------------------------------------------------

def scenario_to_dict(cfg: ScenarioConfig) -> dict:
    return {
        "p": cfg.p,
        "sources": [{"doa_deg": s.doa_deg, "power": s.power} for s in cfg.sources],
        "noise": {"sigma2": cfg.noise.sigma2, "w": list(cfg.noise.w)},
        "distribution": cfg.distribution,
    }


def scenario_from_dict(d: dict) -> ScenarioConfig:
    try:
        cfg = ScenarioConfig(
            p=int(d["p"]),
            sources=tuple(
                SourceSpec(doa_deg=float(s["doa_deg"]), power=float(s["power"]))
                for s in d["sources"]
            ),
            noise=NoiseProfile(
                sigma2=float(d["noise"]["sigma2"]),
                w=tuple(float(x) for x in d["noise"]["w"]),
            ),
            distribution=str(d.get("distribution", GAUSSIAN)).lower(),
        )
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"malformed scenario document: {exc}") from exc
    return validate_scenario(cfg)


def load_scenario(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return scenario_from_dict(json.load(fh))


def save_scenario(cfg: ScenarioConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(cfg), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Bundled presets for the benchmark scenarios: a 10-element half-wavelength
# ULA, three equal-power sources at [0, 5.7, 11.4] degrees, nominal noise
# power 1, and one of three mismatch profiles.  fig1/fig2/fig4 are snapshot
# sweeps (no / weak / strong mismatch); fig3/fig5 are the separation-sweep
# templates with weak / strong mismatch.
# ---------------------------------------------------------------------------

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5")

_RAMP = tuple(k / 10.0 for k in range(-9, 10, 2))  # -9/10, -7/10, ..., 9/10
_PRESET_MISMATCH = {
    "fig1": 0.0,
    "fig2": 0.1,
    "fig3": 0.1,
    "fig4": 0.5,
    "fig5": 0.5,
}


def mismatch_vector(scale: float, sigma2: float = 1.0, p: int = 10) -> tuple[float, ...]:
    """Zero-sum deviation ramp scale*sigma2*[-9/10, -7/10, ..., 9/10]."""
    if p != 10:
        raise ScenarioError("the bundled mismatch ramp is defined for p=10")
    return tuple(scale * sigma2 * r for r in _RAMP)


def preset_scenario(
    name: str,
    distribution: str = GAUSSIAN,
    snr_db: float = 0.0,
    sigma2: float = 1.0,
) -> ScenarioConfig:
    """Build one of the bundled benchmark scenarios (fig1 ... fig5).

    Source powers are sigma2 * 10**(snr_db/10): with unit-modulus steering
    entries this is the per-element SNR.
    """
    if name not in PRESET_NAMES:
        raise ScenarioError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    p = 10
    power = sigma2 * 10.0 ** (snr_db / 10.0)
    sources = tuple(SourceSpec(doa_deg=d, power=power) for d in (0.0, 5.7, 11.4))
    scale = _PRESET_MISMATCH[name]
    w = mismatch_vector(scale, sigma2, p) if scale else (0.0,) * p
    cfg = ScenarioConfig(
        p=p,
        sources=sources,
        noise=NoiseProfile(sigma2=sigma2, w=w),
        distribution=distribution,
    )
    return validate_scenario(cfg)


def with_distribution(cfg: ScenarioConfig, distribution: str) -> ScenarioConfig:
    return validate_scenario(replace(cfg, distribution=distribution))
