import numpy as np
import pytest

from conftest import oracle_candidates, projection_error, random_psd
from sourcecount import (
    NumericalError,
    RngStream,
    SnapshotBlock,
    eig_hermitian,
    generate_snapshots,
    preset_scenario,
    project_truncated_spectrum,
    require_hermitian,
    sample_covariance,
)


def test_require_hermitian_accepts_and_casts():
    M = require_hermitian(np.eye(3))
    assert M.dtype == complex


def test_require_hermitian_rejects_shapes_and_asymmetry():
    with pytest.raises(ValueError, match="square"):
        require_hermitian(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="Hermitian"):
        require_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_require_hermitian_rejects_nonfinite():
    M = np.eye(2, dtype=complex)
    M[0, 0] = np.inf
    with pytest.raises(NumericalError, match="non-finite"):
        require_hermitian(M)


def test_sample_covariance_single_snapshot():
    block = SnapshotBlock(data=np.array([[1.0], [1.0j]]), n_snapshots=1)
    R = sample_covariance(block)
    assert np.allclose(R, [[1.0, -1.0j], [1.0j, 1.0]])


def test_sample_covariance_two_unit_snapshots():
    block = SnapshotBlock(data=np.eye(2, dtype=complex), n_snapshots=2)
    assert np.allclose(sample_covariance(block), 0.5 * np.eye(2))


def test_sample_covariance_trace_and_psd():
    block = generate_snapshots(preset_scenario("fig1"), 50, RngStream(seed=2))
    R = sample_covariance(block)
    trace = float(np.trace(R).real)
    mean_energy = float(np.mean(np.sum(np.abs(block.data) ** 2, axis=0)))
    assert trace == pytest.approx(mean_energy, rel=1e-12)
    assert eig_hermitian(R).values[-1] >= -1e-12


def test_eig_identity_and_diag():
    assert np.allclose(eig_hermitian(np.eye(3)).values, [1.0, 1.0, 1.0])
    eigs = eig_hermitian(np.diag([1.0, 3.0]).astype(complex))
    assert np.allclose(eigs.values, [3.0, 1.0])
    assert np.allclose(np.abs(eigs.vectors), [[0.0, 1.0], [1.0, 0.0]])


def test_eig_two_by_two_analytic():
    eigs = eig_hermitian(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(eigs.values, [3.0, 1.0])
    # eigenvectors defined up to phase: compare by overlap
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / np.sqrt(2.0)
    assert abs(np.vdot(plus, eigs.vectors[:, 0])) == pytest.approx(1.0, abs=1e-12)
    assert abs(np.vdot(minus, eigs.vectors[:, 1])) == pytest.approx(1.0, abs=1e-12)


def test_eigensystem_invariants_random():
    gen = np.random.default_rng(31)
    for _ in range(50):
        p = int(gen.integers(2, 11))
        A = gen.standard_normal((p, p)) + 1j * gen.standard_normal((p, p))
        M = 0.5 * (A + A.conj().T)
        eigs = eig_hermitian(M)
        norm = np.linalg.norm(M)
        assert np.all(np.diff(eigs.values) <= 1e-12)
        for i in range(p):
            resid = M @ eigs.vectors[:, i] - eigs.values[i] * eigs.vectors[:, i]
            assert np.linalg.norm(resid) <= 1e-8 * norm
        gram = eigs.vectors.conj().T @ eigs.vectors
        assert np.abs(gram - np.eye(p)).max() <= 1e-10
        recon = (eigs.vectors * eigs.values) @ eigs.vectors.conj().T
        assert np.linalg.norm(M - recon) <= 1e-8 * norm
        assert float(np.sum(eigs.values)) == pytest.approx(float(np.trace(M).real), rel=1e-9)


def test_project_uniform_matrix():
    lowrank, sigma2 = project_truncated_spectrum(5.0 * np.eye(4), 0, 1e-12)
    assert sigma2 == pytest.approx(5.0)
    assert np.allclose(lowrank, 0.0)


def test_project_exact_spiked():
    lowrank, sigma2 = project_truncated_spectrum(np.diag([3.0, 1.0, 1.0]).astype(complex), 1, 1e-12)
    assert sigma2 == pytest.approx(1.0)
    assert np.allclose(lowrank, np.diag([2.0, 0.0, 0.0]))


def test_project_validates_arguments():
    M = np.eye(3)
    with pytest.raises(ValueError, match="q must satisfy"):
        project_truncated_spectrum(M, 3, 1e-12)
    with pytest.raises(ValueError, match="floor"):
        project_truncated_spectrum(M, 1, 0.0)


def test_project_floor_binds_on_rank_deficient_input():
    M = np.diag([2.0, 0.0, 0.0]).astype(complex)
    lowrank, sigma2 = project_truncated_spectrum(M, 1, 1e-6)
    assert sigma2 == 1e-6
    assert lowrank[0, 0] == pytest.approx(2.0 - 1e-6)


def test_project_lowrank_rank_and_psd():
    gen = np.random.default_rng(8)
    for _ in range(20):
        p = int(gen.integers(3, 9))
        q = int(gen.integers(0, p))
        M = random_psd(gen, p)
        lowrank, sigma2 = project_truncated_spectrum(M, q, 1e-15)
        values = eig_hermitian(lowrank).values
        assert sigma2 > 0
        assert np.all(values >= -1e-12)
        if q < p:
            assert np.all(np.abs(values[q:]) <= 1e-12 * max(1.0, values[0]))


def test_project_randomized_optimality_oracle():
    # no candidate from the same structural family does better
    gen = np.random.default_rng(1234)
    M = random_psd(gen, 8)
    best = projection_error(M, 2)
    errs = oracle_candidates(gen, M, 2, 10**4)
    assert float(errs.min()) >= best - 1e-9
