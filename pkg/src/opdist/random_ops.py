"""Seeded random instances for property batteries.

Entries of random complex matrices have real and imaginary parts
uniform on [-1, 1]; Hermitian matrices are ``(A + A^*)/2``; unitaries
and isometries orthonormalise random frames by QR; contractions clip
the singular values of a random matrix into [0, 1].
"""

from __future__ import annotations

import numpy as np

from .cmf import Cmf, validate_cmf

__all__ = [
    "complex_matrix",
    "hermitian",
    "unitary",
    "isometry",
    "contraction",
    "random_cmf",
]


def complex_matrix(rng, m: int, n: int | None = None) -> np.ndarray:
    n = m if n is None else n
    return rng.uniform(-1, 1, (m, n)) + 1j * rng.uniform(-1, 1, (m, n))


def hermitian(rng, n: int, scale: float = 1.0) -> np.ndarray:
    A = complex_matrix(rng, n)
    return scale * 0.5 * (A + A.conj().T)


def _orthonormal_columns(A):
    Q, R = np.linalg.qr(A)
    # fix the phase so the result is Haar distributed
    d = np.diagonal(R)
    ph = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return Q * ph


def unitary(rng, n: int) -> np.ndarray:
    return _orthonormal_columns(complex_matrix(rng, n))


def isometry(rng, N: int, n: int) -> np.ndarray:
    return _orthonormal_columns(complex_matrix(rng, N, n))


def contraction(rng, m: int, n: int, kind: str = "uniform") -> np.ndarray:
    """Random ``m x n`` contraction.

    ``kind="uniform"`` draws singular values uniformly from [0, 1];
    ``"clip"`` clips the singular values of a random matrix at 1.
    """
    A = complex_matrix(rng, m, n)
    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    if kind == "clip":
        s = np.minimum(s, 1.0)
    else:
        s = rng.uniform(0.0, 1.0, size=s.shape)
    return (U * s) @ Vh


def random_cmf(rng, max_features: int = 6, grid: float = 0.125, span: int = 16,
               p_essential: float = 0.4, max_mult: int = 3) -> Cmf:
    """Random Cmf on a grid of spacing ``grid`` within [-span*grid, span*grid].

    Draws up to ``max_features`` features. With probability
    ``p_essential`` a feature is essential: an interval of 0..4 grid
    steps (0 means an essential point). Otherwise it is a discrete point
    of multiplicity 1..max_mult. Features sharing a grid cell with an
    earlier one are dropped, so the result is a valid Cmf; it is never
    empty.
    """
    while True:
        k = int(rng.integers(1, max_features + 1))
        ivs, pts, occupied = [], {}, []
        for _ in range(k):
            lo = int(rng.integers(-span, span + 1))
            essential = rng.random() < p_essential
            hi = min(span, lo + int(rng.integers(0, 5))) if essential else lo
            if any(lo <= h and hi >= l for l, h in occupied):
                continue
            occupied.append((lo, hi))
            if essential:
                ivs.append((lo * grid, hi * grid))
            else:
                pts[lo * grid] = int(rng.integers(1, max_mult + 1))
        if ivs or pts:
            return validate_cmf(pts, sorted(ivs))
