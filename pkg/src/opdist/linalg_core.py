"""Dense complex linear algebra: norms, clustered eigendecomposition,
spectral projections.

Operators are plain two-dimensional numpy arrays. The helpers
:func:`as_operator` and :func:`as_hermitian` validate and coerce them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ShapeError, SymmetryError

__all__ = [
    "EigenSystem",
    "as_operator",
    "as_hermitian",
    "operator_norm",
    "default_tau",
    "hermitian_eigen",
    "spectral_projection_rank",
    "psd_sqrt",
]

HERMITIAN_RTOL = 1e-12
RECON_RTOL = 1e-9
ORTHO_TOL = 1e-10
TAU_RTOL = 1e-9


def as_operator(R) -> np.ndarray:
    """Return ``R`` as a finite square complex array or raise ShapeError."""
    A = np.asarray(R)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"operator must be square, got shape {A.shape}")
    A = A.astype(complex)
    if not np.all(np.isfinite(A)):
        raise ShapeError("operator has non-finite entries")
    return A


def _scale(A: np.ndarray) -> float:
    return float(np.max(np.abs(A))) if A.size else 0.0


def as_hermitian(R) -> np.ndarray:
    """Validate conjugate symmetry within ``1e-12 * max|entry|``."""
    A = as_operator(R)
    tol = HERMITIAN_RTOL * max(_scale(A), 1.0)
    if A.size and np.max(np.abs(A - A.conj().T)) > tol:
        raise SymmetryError(
            f"operator is not Hermitian (asymmetry {np.max(np.abs(A - A.conj().T)):.3e})"
        )
    return 0.5 * (A + A.conj().T)


def operator_norm(R) -> float:
    """Largest singular value of a square operator."""
    A = as_operator(R)
    return _norm2(A)


def _norm2(A: np.ndarray) -> float:
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def default_tau(values) -> float:
    """Cluster tolerance ``1e-9 * spectral scale`` (scale floored at 1)."""
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    return TAU_RTOL * max(scale, 1.0)


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues, unitary eigenvectors and a clustering.

    ``clusters`` is a tuple of index tuples into ``values``; consecutive
    eigenvalues share a cluster iff their gap is at most ``tau``.
    """

    values: np.ndarray
    vectors: np.ndarray
    clusters: tuple
    tau: float

    @property
    def representatives(self) -> np.ndarray:
        return np.array([self.values[list(c)].mean() for c in self.clusters])

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([len(c) for c in self.clusters], dtype=int)

    def clustered_values(self) -> np.ndarray:
        """Eigenvalues with each one replaced by its cluster representative."""
        out = np.empty_like(self.values)
        for c, rep in zip(self.clusters, self.representatives):
            out[list(c)] = rep
        return out


def _cluster(values: np.ndarray, tau: float) -> tuple:
    clusters = []
    current = []
    for i, v in enumerate(values):
        if current and v - values[current[-1]] > tau:
            clusters.append(tuple(current))
            current = []
        current.append(i)
    if current:
        clusters.append(tuple(current))
    return tuple(clusters)


def hermitian_eigen(R, tau: float | None = None) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix with multiplicity clustering.

    Backed by LAPACK ``heevd`` through :func:`numpy.linalg.eigh`; the
    reconstruction and orthonormality residuals are checked afterwards.
    """
    A = as_hermitian(R)
    if tau is not None and not tau > 0:
        raise ValueError("tau must be positive")
    n = A.shape[0]
    if n == 0:
        return EigenSystem(np.zeros(0), np.zeros((0, 0), complex), (), tau or TAU_RTOL)
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericError(f"eigensolver did not converge: {exc}") from exc
    scale = max(_scale(A), 1.0)
    recon = _norm2(V @ np.diag(w) @ V.conj().T - A)
    if recon > RECON_RTOL * scale:
        raise NumericError(f"reconstruction residual {recon:.3e} too large", recon)
    ortho = _norm2(V.conj().T @ V - np.eye(n))
    if ortho > ORTHO_TOL:
        raise NumericError(f"eigenvectors not orthonormal ({ortho:.3e})", ortho)
    if tau is None:
        tau = default_tau(w)
    return EigenSystem(w, V, _cluster(w, tau), tau)


def spectral_projection_rank(R, interval, tau: float | None = None) -> int:
    """Rank of the spectral projection of ``R`` onto the open ``(a, b)``.

    Eigenvalues are counted with multiplicity via their cluster
    representative; a representative equal to an endpoint is excluded.
    """
    a, b = interval
    if not a < b:
        return 0
    es = hermitian_eigen(R, tau)
    reps = es.representatives
    inside = (reps > a) & (reps < b)
    return int(es.multiplicities[inside].sum())


def psd_sqrt(M, clip_tol: float = 1e-12) -> np.ndarray:
    """Square root of a positive semidefinite Hermitian matrix.

    Negative eigenvalues down to ``-clip_tol * max(1, |M|)`` are treated as
    rounding and clipped to zero; anything more negative raises. Positive
    eigenvalues within a few ulps of zero are zeroed as well, since their
    square roots would turn rounding noise into an O(sqrt(eps)) error.
    """
    A = 0.5 * (np.asarray(M, complex) + np.asarray(M, complex).conj().T)
    if A.size == 0:
        return A
    w, V = np.linalg.eigh(A)
    floor = -clip_tol * max(1.0, float(np.max(np.abs(w))))
    if w.min() < floor:
        raise NumericError(f"matrix is not positive semidefinite (min eig {w.min():.3e})",
                           float(w.min()))
    w = np.clip(w, 0.0, None)
    w[w <= 8 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(w))))] = 0.0
    return (V * np.sqrt(w)) @ V.conj().T
