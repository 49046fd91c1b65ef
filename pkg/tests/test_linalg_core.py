import numpy as np
import pytest

from opdist import random_ops as rnd
from opdist.errors import NumericError, ShapeError, SymmetryError
from opdist.linalg_core import (
    as_hermitian,
    as_operator,
    default_tau,
    hermitian_eigen,
    operator_norm,
    psd_sqrt,
    spectral_projection_rank,
)


def test_as_operator_rejects_rectangular_and_nonfinite():
    with pytest.raises(ShapeError):
        as_operator(np.zeros((2, 3)))
    with pytest.raises(ShapeError):
        as_operator([[np.nan]])
    assert as_operator(3.0).shape == (1, 1)


def test_as_hermitian_tolerance():
    A = np.array([[1.0, 1j], [-1j, 2.0]])
    assert np.allclose(as_hermitian(A), A)
    with pytest.raises(SymmetryError):
        as_hermitian([[0.0, 1.0], [0.0, 0.0]])
    # asymmetry below 1e-12 * scale is accepted and symmetrised
    B = A.copy()
    B[0, 1] += 1e-14
    H = as_hermitian(B)
    assert np.array_equal(H, H.conj().T)


def test_operator_norm_known_values():
    assert operator_norm(np.diag([1.0, -3.0])) == 3.0
    assert operator_norm(np.array([[0.0, 2.0], [0.0, 0.0]])) == pytest.approx(2.0)
    assert operator_norm(np.zeros((0, 0))) == 0.0


def test_eigen_clusters_and_multiplicity():
    es = hermitian_eigen(np.diag([2.0, 1.0, 1.0 + 1e-12, 5.0]))
    assert es.multiplicities.tolist() == [2, 1, 1]
    assert es.representatives[0] == pytest.approx(1.0)
    assert np.allclose(es.clustered_values()[:2], es.representatives[0])
    assert es.tau == pytest.approx(default_tau([5.0]))


def test_eigen_reconstruction_random():
    rng = np.random.default_rng(3)
    for n in range(1, 9):
        A = rnd.hermitian(rng, n)
        es = hermitian_eigen(A)
        V = es.vectors
        assert np.allclose(V @ np.diag(es.values) @ V.conj().T, A, atol=1e-12)
        assert np.all(np.diff(es.values) >= 0)
    with pytest.raises(ValueError):
        hermitian_eigen(np.eye(2), tau=0.0)


def test_spectral_projection_rank_open_interval():
    A = np.diag([0.0, 1.0, 1.0, 2.0])
    assert spectral_projection_rank(A, (0.0, 2.0)) == 2
    assert spectral_projection_rank(A, (-1.0, 2.5)) == 4
    assert spectral_projection_rank(A, (1.0, 1.0)) == 0
    assert spectral_projection_rank(A, (0.5, 1.0)) == 0


def test_psd_sqrt():
    rng = np.random.default_rng(1)
    X = rnd.complex_matrix(rng, 5)
    M = X @ X.conj().T
    S = psd_sqrt(M)
    assert np.allclose(S @ S, M, atol=1e-10)
    # rounding-level negative eigenvalues are clipped, real ones raise
    P = np.diag([1.0, -1e-15])
    assert np.allclose(psd_sqrt(P), np.diag([1.0, 0.0]))
    with pytest.raises(NumericError):
        psd_sqrt(np.diag([1.0, -1e-3]))


def test_psd_sqrt_exact_zero_for_projection_defect():
    # I - J*J for a partial isometry is a projection; tiny rounding must not
    # produce sqrt(eps)-sized entries
    J = np.array([[1.0, 0.0], [0.0, 0.0]])
    W = psd_sqrt(np.eye(2) - J.T @ J)
    assert np.abs(W - np.diag([0.0, 1.0])).max() <= 1e-15
