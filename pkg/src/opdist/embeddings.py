"""Isometric embeddings into a common space and the difference operator.

Conventions: an isometry from ``C^n`` into ``C^N`` is an ``N x n`` array
``iota`` with ``iota^* iota = id``; an identification operator from
``C^n1`` to ``C^n2`` is an ``n2 x n1`` contraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .cmf import Cmf, embedded_cmf
from .errors import ConsistencyError, ContractionError, ProjectionError, ShapeError
from .linalg_core import _norm2, as_operator, psd_sqrt

__all__ = [
    "ISO_TOL",
    "check_isometry",
    "check_contraction",
    "EmbeddingPair",
    "DDecomposition",
    "zero_extension",
    "difference_operator",
    "decompose_D",
    "nagy_embedding",
    "glue_embeddings",
    "halmos_angles",
    "two_projection_norm",
    "compressed_spectrum",
]

ISO_TOL = 1e-10
CONTRACTION_TOL = 1e-10
IDENTITY_TOL = 1e-8


def check_isometry(M, tol: float = ISO_TOL) -> np.ndarray:
    """Return ``M`` as a complex array after checking ``M^* M = id``."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise ShapeError(f"isometry must be a matrix, got shape {M.shape}")
    N, n = M.shape
    if N < n:
        raise ShapeError(f"isometry from dim {n} cannot land in dim {N}")
    err = _norm2(M.conj().T @ M - np.eye(n))
    if err > tol:
        raise ShapeError(f"not an isometry: |M*M - id| = {err:.3e}")
    return M


def check_contraction(J, tol: float = CONTRACTION_TOL) -> np.ndarray:
    J = np.atleast_2d(np.asarray(J, dtype=complex))
    nrm = _norm2(J)
    if nrm > 1 + tol:
        raise ContractionError(f"identification operator has norm {nrm:.12g} > 1")
    return J


@dataclass(frozen=True)
class EmbeddingPair:
    """Two isometries into a common ``C^N``."""

    iota1: np.ndarray
    iota2: np.ndarray

    def __post_init__(self):
        i1 = check_isometry(self.iota1)
        i2 = check_isometry(self.iota2)
        if i1.shape[0] != i2.shape[0]:
            raise ShapeError("isometries land in different target dimensions")
        object.__setattr__(self, "iota1", i1)
        object.__setattr__(self, "iota2", i2)

    @property
    def target_dim(self) -> int:
        return self.iota1.shape[0]

    @property
    def J(self) -> np.ndarray:
        """The induced identification operator ``iota2^* iota1``."""
        return self.iota2.conj().T @ self.iota1


@dataclass(frozen=True)
class DDecomposition:
    """Difference operator split along the ranges of the two isometries.

    ``blocks`` maps names like ``"P2 D P1"`` to matrices, ``norms`` to
    their operator norms, and ``identities`` to ``(lhs, rhs)`` pairs of
    the norm identities that were verified.
    """

    D: np.ndarray
    blocks: dict
    norms: dict
    identities: dict


def zero_extension(n: int, N: int, offset: int = 0) -> np.ndarray:
    """Coordinate injection of ``C^n`` into rows ``offset..offset+n-1``."""
    if n < 0 or offset < 0 or offset + n > N:
        raise ShapeError(f"cannot place dim {n} at offset {offset} inside dim {N}")
    iota = np.zeros((N, n), dtype=complex)
    iota[offset:offset + n, :] = np.eye(n)
    return iota


def difference_operator(pair: EmbeddingPair, R1, R2) -> np.ndarray:
    """``iota1 R1 iota1^* - iota2 R2 iota2^*``."""
    R1, R2 = as_operator(R1), as_operator(R2)
    i1, i2 = pair.iota1, pair.iota2
    if i1.shape[1] != R1.shape[0] or i2.shape[1] != R2.shape[0]:
        raise ShapeError("operator dimensions do not match the isometries")
    return i1 @ R1 @ i1.conj().T - i2 @ R2 @ i2.conj().T


def decompose_D(pair: EmbeddingPair, R1, R2, tol: float = IDENTITY_TOL) -> DDecomposition:
    """Three-block decomposition of D and the associated norm identities.

    With ``P_n = iota_n iota_n^*`` and ``J = iota2^* iota1``:

    * ``|P2 D P1|      = |J R1 - R2 J|``
    * ``|P2⊥ D P1|^2   = |R1^*(id - J^*J) R1|``
    * ``|P1⊥ D P2|^2   = |R2^*(id - JJ^*) R2|``
    * ``|P2 D P1⊥|^2   = |R2 (id - JJ^*) R2^*|``
    * ``|P1 D P2|      = |J R1^* - R2^* J|``

    and ``D`` equals the sum of the first three blocks of its split
    (``P2⊥ D P1⊥`` vanishes). A violation beyond ``tol`` (relative to
    the size of the operators) raises :class:`ConsistencyError`.
    """
    R1, R2 = as_operator(R1), as_operator(R2)
    D = difference_operator(pair, R1, R2)
    N = pair.target_dim
    P1 = pair.iota1 @ pair.iota1.conj().T
    P2 = pair.iota2 @ pair.iota2.conj().T
    Q1, Q2 = np.eye(N) - P1, np.eye(N) - P2
    J = pair.J
    I1, I2 = np.eye(R1.shape[0]), np.eye(R2.shape[0])
    blocks = {
        "P2 D P1": P2 @ D @ P1,
        "P2perp D P1": Q2 @ D @ P1,
        "P2 D P1perp": P2 @ D @ Q1,
        "P2perp D P1perp": Q2 @ D @ Q1,
        "P1perp D P2": Q1 @ D @ P2,
        "P1 D P2": P1 @ D @ P2,
    }
    norms = {k: _norm2(v) for k, v in blocks.items()}
    identities = {
        "intertwining": (norms["P2 D P1"], _norm2(J @ R1 - R2 @ J)),
        "defect_1": (norms["P2perp D P1"] ** 2,
                     _norm2(R1.conj().T @ (I1 - J.conj().T @ J) @ R1)),
        "defect_2": (norms["P1perp D P2"] ** 2,
                     _norm2(R2.conj().T @ (I2 - J @ J.conj().T) @ R2)),
        "defect_2_adjoint": (norms["P2 D P1perp"] ** 2,
                             _norm2(R2 @ (I2 - J @ J.conj().T) @ R2.conj().T)),
        "intertwining_adjoint": (norms["P1 D P2"],
                                 _norm2(J @ R1.conj().T - R2.conj().T @ J)),
    }
    scale = max(1.0, _norm2(R1), _norm2(R2))
    for name, (lhs, rhs) in identities.items():
        if abs(lhs - rhs) > tol * scale ** 2:
            raise ConsistencyError(f"norm identity {name} violated: {lhs} vs {rhs}")
    recon = _norm2(D - blocks["P2 D P1"] - blocks["P2perp D P1"] - blocks["P2 D P1perp"])
    if recon > tol * scale or norms["P2perp D P1perp"] > tol * scale:
        raise ConsistencyError(f"three-block split of D fails by {recon:.3e}")
    return DDecomposition(D, blocks, norms, identities)


def nagy_embedding(J) -> EmbeddingPair:
    """Embedding pair into ``C^(n1+n2)`` factoring a contraction ``J``.

    ``iota1 f = (W f, J f)`` with ``W = (id - J^*J)^(1/2)`` and
    ``iota2 g = (0, g)``, so that ``iota2^* iota1 = J``.
    """
    J = check_contraction(J)
    n2, n1 = J.shape
    W = psd_sqrt(np.eye(n1) - J.conj().T @ J)
    iota1 = np.vstack([W, J])
    iota2 = np.vstack([np.zeros((n1, n2), complex), np.eye(n2)])
    return EmbeddingPair(iota1, iota2)


def _complement(iota: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the orthogonal complement of ran iota."""
    N, n = iota.shape
    if n == N:
        return np.zeros((N, 0), dtype=complex)
    Q, _ = scipy.linalg.qr(iota, mode="full")
    return Q[:, n:]


def glue_embeddings(pair12: EmbeddingPair, pair23: EmbeddingPair) -> EmbeddingPair:
    """Glue ``(iota12, iota21)`` over H12 and ``(iota23, iota32)`` over H23
    along the middle space H2.

    The common target is ``ran(iota21)⊥ ⊕ H2 ⊕ ran(iota23)⊥`` realized by
    orthonormal complements; the result embeds H1 and H3 and satisfies
    ``|D13(R1, R3)| <= |D12(R1, R2)| + |D23(R2, R3)|`` for every ``R2``.
    """
    i12, i21 = pair12.iota1, pair12.iota2
    i23, i32 = pair23.iota1, pair23.iota2
    n2 = i21.shape[1]
    if i23.shape[1] != n2:
        raise ShapeError("middle spaces of the two pairs differ in dimension")
    C12, C23 = _complement(i21), _complement(i23)
    k12, k23 = C12.shape[1], C23.shape[1]
    lift12 = np.vstack([C12.conj().T, i21.conj().T,
                        np.zeros((k23, i21.shape[0]), complex)])
    lift23 = np.vstack([np.zeros((k12, i23.shape[0]), complex),
                        i23.conj().T, C23.conj().T])
    return EmbeddingPair(lift12 @ i12, lift23 @ i32)


def _check_projection(P, tol: float = ISO_TOL) -> np.ndarray:
    P = np.asarray(P, dtype=complex)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ProjectionError("projection must be square")
    if _norm2(P - P.conj().T) > tol or _norm2(P @ P - P) > tol:
        raise ProjectionError("matrix is not an orthogonal projection")
    return 0.5 * (P + P.conj().T)


def _range_basis(P: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(P)
    return V[:, w > 0.5]


def halmos_angles(P1, P2, tol: float = 1e-9) -> dict:
    """Canonical decomposition of a pair of orthogonal projections.

    Returns subspace dimensions ``"12"`` (ran P1 ∩ ran P2), ``"1,2perp"``,
    ``"1perp,2"``, ``"1perp,2perp"`` and the generic angles
    ``theta in (0, pi/2)`` from ``cos^2 theta in spec(P1 P2 P1 | ran P1)``.
    """
    P1, P2 = _check_projection(P1), _check_projection(P2)
    N = P1.shape[0]
    B1, B2 = _range_basis(P1), _range_basis(P2)
    mu = np.linalg.eigvalsh(B1.conj().T @ P2 @ B1) if B1.shape[1] else np.zeros(0)
    h12 = int(np.sum(mu > 1 - tol))
    h12p = int(np.sum(mu < tol))
    generic = mu[(mu >= tol) & (mu <= 1 - tol)]
    thetas = np.arccos(np.sqrt(np.clip(generic, 0.0, 1.0)))
    g = len(thetas)
    h1p2 = B2.shape[1] - h12 - g
    h1p2p = N - h12 - h12p - h1p2 - 2 * g
    return {"12": h12, "1,2perp": h12p, "1perp,2": h1p2, "1perp,2perp": h1p2p,
            "theta": thetas}


def two_projection_norm(r1: complex, r2: complex, P1, P2, tol: float = 1e-9) -> float:
    """``|r1 P1 - r2 P2|`` checked against the two-projection block formula.

    In the canonical decomposition the operator has diagonal entries
    ``r1 - r2``, ``r1``, ``-r2``, ``0`` on the four pure subspaces and the
    block ``[[r1 - r2 c^2, -r2 c s], [-r2 c s, -r2 s^2]]`` for every
    generic angle; for real ``r1, r2`` its eigenvalues are
    ``(r1 - r2)/2 ± sqrt((r1 - r2)^2 + 4 r1 r2 sin^2 theta)/2``.
    """
    P1, P2 = _check_projection(P1), _check_projection(P2)
    direct = _norm2(r1 * P1 - r2 * P2)
    h = halmos_angles(P1, P2)
    parts = [0.0]
    if h["12"]:
        parts.append(abs(r1 - r2))
    if h["1,2perp"]:
        parts.append(abs(r1))
    if h["1perp,2"]:
        parts.append(abs(r2))
    real = np.isreal(r1) and np.isreal(r2)
    for th in h["theta"]:
        c, s = np.cos(th), np.sin(th)
        if real:
            a, b = float(np.real(r1)), float(np.real(r2))
            root = np.sqrt((a - b) ** 2 + 4 * a * b * s * s)
            parts.append(max(abs((a - b + root) / 2), abs((a - b - root) / 2)))
        else:
            M = np.array([[r1 - r2 * c * c, -r2 * c * s], [-r2 * c * s, -r2 * s * s]])
            parts.append(_norm2(M))
    formula = max(parts)
    if abs(formula - direct) > tol * max(1.0, abs(r1), abs(r2)):
        raise ConsistencyError(f"two-projection formula {formula} != direct norm {direct}")
    return direct


def compressed_spectrum(alpha: Cmf, surjective: bool) -> Cmf:
    """Cmf of ``iota R iota^*``: unchanged if ``iota`` is onto, otherwise 0
    joins the essential set (infinite co-dimension)."""
    if surjective:
        return alpha
    return embedded_cmf(alpha, float("inf"))
