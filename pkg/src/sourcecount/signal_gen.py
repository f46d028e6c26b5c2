"""Synthetic snapshot generation for a half-wavelength uniform linear array.

Snapshots follow x(t) = A s(t) + n(t): independent complex Gaussian or
Laplacian source samples, temporally white complex Gaussian noise whose
power may differ from sensor to sensor.  All randomness flows through
counter-based Philox streams keyed by (seed, stream_id), so any trial can be
regenerated independently of evaluation order.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, replace

import numpy as np

from .model import GAUSSIAN, LAPLACIAN, NoiseProfile, ScenarioConfig, validate_scenario

_SNAPSHOT_MAGIC = b"SCSNAP01"


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream: identical (seed, stream_id) -> identical draws.

    ``branch`` extends the stream key so one stream can hand independent
    sub-streams to the source and noise generators.
    """

    seed: int
    stream_id: int = 0
    branch: tuple[int, ...] = ()

    def generator(self) -> np.random.Generator:
        key = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id, *self.branch))
        return np.random.Generator(np.random.Philox(key))

    def child(self, k: int) -> "RngStream":
        return replace(self, branch=self.branch + (k,))


@dataclass(frozen=True)
class SnapshotBlock:
    """p x N complex matrix of array outputs, one snapshot per column."""

    data: np.ndarray
    n_snapshots: int

    @property
    def p(self) -> int:
        return self.data.shape[0]


def steering_vector(doa_deg: float, p: int) -> np.ndarray:
    """Array response of a half-wavelength ULA: entry k is exp(i*pi*k*sin(doa)).

    Entries have unit modulus; the first sensor is the phase reference.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    phase = np.pi * np.arange(p) * np.sin(np.deg2rad(doa_deg))
    return np.exp(1j * phase)


def steering_matrix(doas_deg, p: int) -> np.ndarray:
    """p x q matrix whose columns are steering vectors."""
    doas = np.atleast_1d(np.asarray(doas_deg, dtype=float))
    if doas.size == 0:
        return np.zeros((p, 0), dtype=complex)
    return np.exp(1j * np.pi * np.outer(np.arange(p), np.sin(np.deg2rad(doas))))


def sample_sources(cfg: ScenarioConfig, n_snapshots: int, rng: RngStream) -> np.ndarray:
    """q x N zero-mean i.i.d. source samples with E|s_k|^2 = powers[k].

    Gaussian sources are circular complex normal.  Laplacian sources have
    independent Laplace real and imaginary parts with scale sqrt(power)/2,
    which gives E|s|^2 = 4*scale^2 = power.
    """
    if n_snapshots < 1:
        raise ValueError("n_snapshots must be >= 1")
    q = cfg.q
    if q == 0:
        return np.zeros((0, n_snapshots), dtype=complex)
    gen = rng.generator()
    powers = cfg.powers()[:, None]
    shape = (q, n_snapshots)
    if cfg.distribution == GAUSSIAN:
        s = gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
        return np.sqrt(powers / 2.0) * s
    if cfg.distribution == LAPLACIAN:
        s = gen.laplace(size=shape) + 1j * gen.laplace(size=shape)
        return (np.sqrt(powers) / 2.0) * s
    raise ValueError(f"unknown distribution {cfg.distribution!r}")


def sample_noise(noise: NoiseProfile, n_snapshots: int, rng: RngStream) -> np.ndarray:
    """p x N complex Gaussian noise; row i has per-sample power sigma2 + w[i]."""
    if n_snapshots < 1:
        raise ValueError("n_snapshots must be >= 1")
    gen = rng.generator()
    powers = noise.sensor_powers()[:, None]
    shape = (len(noise.w), n_snapshots)
    n = gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
    return np.sqrt(powers / 2.0) * n


def generate_snapshots(cfg: ScenarioConfig, n_snapshots: int, rng: RngStream) -> SnapshotBlock:
    """Draw N snapshots x(t) = A s(t) + n(t) for the scenario.

    Sources are drawn from ``rng.child(0)`` and noise from ``rng.child(1)``,
    so a zero-source scenario reproduces ``sample_noise`` on child stream 1
    exactly.
    """
    validate_scenario(cfg)
    A = steering_matrix(cfg.doas_deg(), cfg.p)
    s = sample_sources(cfg, n_snapshots, rng.child(0))
    n = sample_noise(cfg.noise, n_snapshots, rng.child(1))
    return SnapshotBlock(data=A @ s + n, n_snapshots=n_snapshots)


# ---------------------------------------------------------------------------
# Optional on-disk snapshot dump: 16-byte header (8-byte magic, uint32 p,
# uint32 N, little-endian) followed by row-major p x N float64 pairs (re, im).
# ---------------------------------------------------------------------------

def write_snapshots(block: SnapshotBlock, path) -> None:
    p, n = block.data.shape
    interleaved = np.empty((p, n, 2), dtype="<f8")
    interleaved[:, :, 0] = block.data.real
    interleaved[:, :, 1] = block.data.imag
    with open(path, "wb") as fh:
        fh.write(_SNAPSHOT_MAGIC)
        fh.write(struct.pack("<II", p, n))
        fh.write(interleaved.tobytes())


def read_snapshots(path) -> SnapshotBlock:
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) != 16 or header[:8] != _SNAPSHOT_MAGIC:
            raise ValueError(f"{path}: not a snapshot dump (bad magic)")
        p, n = struct.unpack("<II", header[8:])
        raw = np.fromfile(fh, dtype="<f8", count=2 * p * n)
    if raw.size != 2 * p * n:
        raise ValueError(f"{path}: truncated snapshot dump")
    interleaved = raw.reshape(p, n, 2)
    return SnapshotBlock(data=interleaved[:, :, 0] + 1j * interleaved[:, :, 1], n_snapshots=n)
