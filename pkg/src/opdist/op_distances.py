"""Unitary, isometric and quasi-unitary distances between operators.

``d_uni`` is exact for Hermitian matrices. ``d_iso`` and ``d_que`` are
infima over embeddings resp. contractions; this module evaluates them
exactly only through closed forms and otherwise returns a bracket: a
lower bound from spectral inequalities and an upper bound from an
explicit witness found by search. Every upper bound is the value at a
concrete embedding pair or contraction, so it can never undercut the
true infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .cmf import INF, Cmf, RealSet, cmf_from_hermitian, embedded_cmf
from .cmf_distances import d_spec, hausdorff, lp_delta
from .embeddings import (
    EmbeddingPair,
    check_contraction,
    difference_operator,
    nagy_embedding,
    zero_extension,
)
from .errors import ConsistencyError, ShapeError, SymmetryError
from .linalg_core import _norm2, as_hermitian, as_operator, hermitian_eigen

__all__ = [
    "SQRT3",
    "SearchConfig",
    "SearchResult",
    "Verdict",
    "DistanceReport",
    "delta_J",
    "delta_J_terms",
    "delta_J_grad",
    "d_uni_hermitian",
    "d_uni_cmf",
    "d_iso_scalar",
    "d_que_scalar",
    "d_que_to_zero",
    "scalar_multiple",
    "d_iso_lower",
    "d_que_lower",
    "eigen_aligned_pair",
    "d_iso_upper",
    "d_que_upper",
    "d_iso_bracket_cmf",
    "inequality_report",
]

SQRT3 = math.sqrt(3.0)
CHAIN_TOL = 1e-9


# ---------------------------------------------------------------- delta_J


def _check_dims(R1, R2, J):
    R1, R2 = as_operator(R1), as_operator(R2)
    J = check_contraction(J)
    if J.shape != (R2.shape[0], R1.shape[0]):
        raise ShapeError(f"J has shape {J.shape}, expected {(R2.shape[0], R1.shape[0])}")
    return R1, R2, J


SNAP_ULPS = 8 * np.finfo(float).eps


def _defect_factors(J):
    """``(id - J^*J)^(1/2)`` and ``(id - JJ^*)^(1/2)`` from one SVD of J.

    Singular values within a few ulps of 1 are snapped to 1 so that a
    (partial) isometry given to rounding has exactly vanishing defect on
    its initial space; otherwise the square root would inflate rounding
    of order eps to order sqrt(eps).
    """
    n2, n1 = J.shape
    U, s, Vh = np.linalg.svd(J, full_matrices=True)
    s = np.clip(s, 0.0, 1.0)
    s[1.0 - s <= SNAP_ULPS] = 1.0
    d1 = np.ones(n1)
    d2 = np.ones(n2)
    k = len(s)
    d1[:k] = np.sqrt((1.0 - s) * (1.0 + s))
    d2[:k] = d1[:k]
    return d1[:, None] * Vh, d2[:, None] * U.conj().T


def delta_J_terms(R1, R2, J) -> tuple:
    """The four terms of δ_J: two defects, two intertwining norms.

    The defects use ``|R^*(id - J^*J)R|^(1/2) = |(id - J^*J)^(1/2) R|``.
    """
    R1, R2, J = _check_dims(R1, R2, J)
    F1, F2 = _defect_factors(J)
    return (
        _norm2(F1 @ R1),
        _norm2(F2 @ R2),
        _norm2(J @ R1 - R2 @ J),
        _norm2(J @ R1.conj().T - R2.conj().T @ J),
    )


def delta_J(R1, R2, J) -> float:
    """``δ_J(R1, R2)``: the largest of :func:`delta_J_terms`."""
    return max(delta_J_terms(R1, R2, J))


def _top_eigvec(M):
    w, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    return w[-1], V[:, -1]


def _top_svd(M):
    U, s, Vh = np.linalg.svd(M)
    return s[0], U[:, 0], Vh[0].conj()


def delta_J_grad(R1, R2, J) -> tuple:
    """Value of δ_J and a subgradient with respect to J.

    The subgradient ``G`` satisfies ``dδ = Re tr(G^* dJ)`` for the active
    term (ties broken by term order).
    """
    R1, R2, J = _check_dims(R1, R2, J)
    n1, n2 = R1.shape[0], R2.shape[0]
    Jh = J.conj().T
    R1h, R2h = R1.conj().T, R2.conj().T
    lam1, w1 = _top_eigvec(R1h @ (np.eye(n1) - Jh @ J) @ R1)
    lam2, w2 = _top_eigvec(R2h @ (np.eye(n2) - J @ Jh) @ R2)
    s3, u3, v3 = _top_svd(J @ R1 - R2 @ J)
    s4, u4, v4 = _top_svd(J @ R1h - R2h @ J)
    t1, t2 = math.sqrt(max(lam1, 0.0)), math.sqrt(max(lam2, 0.0))
    vals = [t1, t2, s3, s4]
    k = int(np.argmax(vals))
    if vals[k] == 0.0:
        return 0.0, np.zeros_like(J)
    if k == 0:
        a = R1 @ w1
        G = -np.outer(J @ a, a.conj()) / t1
    elif k == 1:
        b = R2 @ w2
        G = -np.outer(b, b.conj()) @ J / t2
    elif k == 2:
        uv = np.outer(u3, v3.conj())
        G = uv @ R1h - R2h @ uv
    else:
        uv = np.outer(u4, v4.conj())
        G = uv @ R1 - R2 @ uv
    return vals[k], G


# ---------------------------------------------------------- closed forms


def d_uni_hermitian(R1, R2, tau: float | None = None, check: bool = True) -> float:
    """Unitary distance of two Hermitian matrices.

    ``inf`` for different dimensions, otherwise the largest gap between
    ascending eigenvalues (clustered values, so that multiplicities are
    the ones of the Cmf). With ``check`` the result is compared with
    :func:`lp_delta` of the two Cmfs and a mismatch raises.
    """
    A, B = as_hermitian(R1), as_hermitian(R2)
    if A.shape != B.shape:
        return INF
    if A.shape[0] == 0:
        return 0.0
    e1, e2 = hermitian_eigen(A, tau), hermitian_eigen(B, tau)
    value = float(np.max(np.abs(e1.clustered_values() - e2.clustered_values())))
    if check:
        other = lp_delta(cmf_from_hermitian(A, tau), cmf_from_hermitian(B, tau))
        scale = max(1.0, float(np.max(np.abs(e1.values))), float(np.max(np.abs(e2.values))))
        if abs(other - value) > 1e-9 * scale:
            raise ConsistencyError(
                f"sorted matching gives {value}, Lévy-Prokhorov gives {other}")
    return value


def _cmf_dim(alpha: Cmf):
    return alpha.total_discrete if alpha.is_purely_discrete else INF


def d_uni_cmf(alpha1: Cmf, alpha2: Cmf) -> float:
    """Unitary distance of self-adjoint operators with these Cmfs.

    Finite type means a purely discrete Cmf on a space of dimension equal
    to its total multiplicity; mismatched dimensions give ``inf``.
    """
    if _cmf_dim(alpha1) != _cmf_dim(alpha2):
        return INF
    return lp_delta(alpha1, alpha2)


def d_iso_scalar(r1: complex, r2: complex) -> float:
    """Isometric distance of ``r1 id`` and ``r2 id``."""
    return min(abs(r1 - r2), max(abs(r1), abs(r2)))


def d_que_scalar(r1: complex, r2: complex) -> float:
    """Quasi-unitary distance of ``r1 id`` and ``r2 id`` (equal dimensions)."""
    a, b = abs(r1 - r2), max(abs(r1), abs(r2))
    if a == 0.0:
        return 0.0
    return a * b / math.hypot(a, b)


def d_que_to_zero(R) -> float:
    """``|R| / sqrt(2)``, the quasi-unitary distance of ``R`` to the zero
    operator on a space at least as large."""
    return _norm2(as_operator(R)) / math.sqrt(2.0)


def scalar_multiple(R, rtol: float = 1e-12):
    """Return ``r`` if ``R = r id`` (within ``rtol``), else ``None``."""
    A = as_operator(R)
    n = A.shape[0]
    if n == 0:
        return None
    r = complex(np.trace(A) / n)
    if _norm2(A - r * np.eye(n)) <= rtol * max(1.0, abs(r)):
        return r
    return None


# ------------------------------------------------------------ lower bounds


def _is_hermitian(A) -> bool:
    try:
        as_hermitian(A)
    except SymmetryError:
        return False
    return True


def _hermitian_iso_lower(A, B) -> float:
    """Hausdorff lower bound over the possible shapes of the embedding.

    Whether each isometry is onto decides if 0 joins the spectrum of the
    compressed operator; when both are onto the unitary distance applies.
    The isometric infimum is at least the smallest of these cases.
    """
    n1, n2 = A.shape[0], B.shape[0]
    s1 = RealSet.from_points(np.linalg.eigvalsh(A).tolist())
    s2 = RealSet.from_points(np.linalg.eigvalsh(B).tolist())
    z = RealSet(((0.0, 0.0),))
    cases = [hausdorff(s1.union(z), s2.union(z))]
    if n1 == n2:
        cases.append(d_uni_hermitian(A, B, check=False))
    if n1 < n2:
        cases.append(hausdorff(s1.union(z), s2))
    if n2 < n1:
        cases.append(hausdorff(s1, s2.union(z)))
    return min(cases)


def d_iso_lower(R1, R2) -> float:
    """A certified lower bound on the isometric distance.

    Combines ``|R|`` when the other operator vanishes, the scalar closed
    form for multiples of the identity, and for Hermitian input the
    Hausdorff distance of the (possibly zero-augmented) spectra, which
    bounds the norm of any difference operator from below.
    """
    A, B = as_operator(R1), as_operator(R2)
    best = 0.0
    if not np.any(B):
        best = max(best, _norm2(A))
    if not np.any(A):
        best = max(best, _norm2(B))
    r1, r2 = scalar_multiple(A), scalar_multiple(B)
    if r1 is not None and r2 is not None:
        best = max(best, d_iso_scalar(r1, r2))
    if A.size and B.size and _is_hermitian(A) and _is_hermitian(B):
        best = max(best, _hermitian_iso_lower(as_hermitian(A), as_hermitian(B)))
    return best


def d_que_lower(R1, R2) -> float:
    """A certified lower bound on the quasi-unitary distance.

    ``d_iso / sqrt 3`` is always valid; the scalar closed form and
    ``|R|/sqrt 2`` against the zero operator bound δ_J from below for every
    contraction, irrespective of the dimensions.
    """
    A, B = as_operator(R1), as_operator(R2)
    best = d_iso_lower(A, B) / SQRT3
    r1, r2 = scalar_multiple(A), scalar_multiple(B)
    if r1 is not None and r2 is not None:
        best = max(best, d_que_scalar(r1, r2))
    if not np.any(B):
        best = max(best, _norm2(A) / math.sqrt(2.0))
    if not np.any(A):
        best = max(best, _norm2(B) / math.sqrt(2.0))
    return best


# ----------------------------------------------------------------- search


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the numerical searches for the isometric and quasi-unitary
    infima. ``target_dim=None`` means ``n1 + n2``; ``chain_tol`` is the
    relative tolerance of the report verdicts."""

    target_dim: int | None = None
    restarts: int = 8
    steps: int = 500
    step_tol: float = 1e-8
    seed: int = 0
    cert_tol: float = 1e-12
    chain_tol: float = CHAIN_TOL


@dataclass
class SearchResult:
    """Best value found, the witness achieving it and bookkeeping."""

    value: float
    witness: object
    source: str
    lower: float
    exhausted: bool = False
    evaluations: int = 0
    certified: bool = field(default=False)


def _bottleneck_slots(lam, mu):
    """Assign eigenvalues of both operators to coordinates of C^(n1+n2),
    sharing a coordinate (pair) or not, minimising the largest diagonal
    entry of the resulting difference. Returns (value, pairs, lone1, lone2).
    """
    n1, n2 = len(lam), len(mu)
    n = n1 + n2
    cost = np.full((n, n), np.inf)
    cost[:n1, :n2] = np.abs(lam[:, None] - mu[None, :])
    cost[np.arange(n1), n2 + np.arange(n1)] = np.abs(lam)
    cost[n1 + np.arange(n2), np.arange(n2)] = np.abs(mu)
    cost[n1:, n2:] = 0.0
    levels = np.unique(cost[np.isfinite(cost)])
    lo, hi = 0, len(levels) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        graph = csr_matrix((cost <= levels[mid]).astype(np.int8))
        match = maximum_bipartite_matching(graph, perm_type="column")
        if np.all(match >= 0):
            best, hi = (levels[mid], match), mid - 1
        else:
            lo = mid + 1
    value, match = best
    pairs = [(i, int(match[i])) for i in range(n1) if match[i] < n2]
    lone1 = [i for i in range(n1) if match[i] >= n2]
    used = {j for _, j in pairs}
    lone2 = [j for j in range(n2) if j not in used]
    return float(value), pairs, lone1, lone2


def eigen_aligned_pair(R1, R2, N: int | None = None):
    """Embedding pair diagonalising both Hermitian operators in common
    coordinates, chosen by bottleneck assignment of the eigenvalues.

    Returns ``(EmbeddingPair, predicted |D|)`` or ``None`` when ``N`` is
    too small for the generic layout.
    """
    A, B = as_hermitian(R1), as_hermitian(R2)
    n1, n2 = A.shape[0], B.shape[0]
    N = n1 + n2 if N is None else N
    value, pairs, lone1, lone2 = _bottleneck_slots(
        np.linalg.eigvalsh(A), np.linalg.eigvalsh(B))
    used_slots = len(pairs) + len(lone1) + len(lone2)
    if used_slots > N:
        return None
    w1, V1 = np.linalg.eigh(A)
    w2, V2 = np.linalg.eigh(B)
    iota1 = np.zeros((N, n1), complex)
    iota2 = np.zeros((N, n2), complex)
    slot = 0
    for i, j in pairs:
        iota1[slot] = V1[:, i].conj()
        iota2[slot] = V2[:, j].conj()
        slot += 1
    for i in lone1:
        iota1[slot] = V1[:, i].conj()
        slot += 1
    for j in lone2:
        iota2[slot] = V2[:, j].conj()
        slot += 1
    return EmbeddingPair(iota1, iota2), value


def _zero_extension_pairs(n1, n2, N):
    for o1 in range(N - n1 + 1):
        for o2 in range(N - n2 + 1):
            yield EmbeddingPair(zero_extension(n1, N, o1), zero_extension(n2, N, o2))


def _pad(pair: EmbeddingPair, N: int):
    k = N - pair.target_dim
    if k < 0:
        return None
    if k == 0:
        return pair
    z1 = np.zeros((k, pair.iota1.shape[1]), complex)
    z2 = np.zeros((k, pair.iota2.shape[1]), complex)
    return EmbeddingPair(np.vstack([pair.iota1, z1]), np.vstack([pair.iota2, z2]))


def _polar(Y):
    U, _, Vh = np.linalg.svd(Y, full_matrices=False)
    return U @ Vh


def _random_frame(rng, N, n):
    Z = rng.standard_normal((N, n)) + 1j * rng.standard_normal((N, n))
    Q, _ = np.linalg.qr(Z)
    return Q[:, :n]


def _iso_value_grad(R1, R2, X1, X2):
    """|D| for frames X1, X2 and its (Euclidean) subgradients."""
    D = X1 @ R1 @ X1.conj().T - X2 @ R2 @ X2.conj().T
    s, u, v = _top_svd(D)
    G = np.outer(u, v.conj())
    Gh = G.conj().T
    g1 = G @ X1 @ R1.conj().T + Gh @ X1 @ R1
    g2 = -(G @ X2 @ R2.conj().T + Gh @ X2 @ R2)
    return s, g1, g2


def _tangent(X, G):
    S = X.conj().T @ G
    return G - X @ (0.5 * (S + S.conj().T))


def _stiefel_descent(R1, R2, X1, X2, steps, step_tol, target):
    """Backtracking subgradient descent for |D| over pairs of frames,
    re-orthonormalised by the polar factor after every step."""
    f, g1, g2 = _iso_value_grad(R1, R2, X1, X2)
    scale = max(1.0, _norm2(R1), _norm2(R2))
    t = 0.5 / scale
    evals = 1
    for _ in range(steps):
        if f <= target:
            return f, X1, X2, evals, False
        g1, g2 = _tangent(X1, g1), _tangent(X2, g2)
        while True:
            Y1, Y2 = _polar(X1 - t * g1), _polar(X2 - t * g2)
            fn, h1, h2 = _iso_value_grad(R1, R2, Y1, Y2)
            evals += 1
            if fn < f:
                X1, X2, f, g1, g2 = Y1, Y2, fn, h1, h2
                t *= 2.0
                break
            t *= 0.5
            if t < step_tol:
                return f, X1, X2, evals, False
    return f, X1, X2, evals, True


def _contraction_candidates(pairs):
    out = []
    for p in pairs:
        out.append(p.J)
    return out


def _brent_over_scale(fun, tol=1e-12):
    """Minimise ``fun(c)`` for ``c`` in [0, 1]; endpoints checked too.

    Bounded Brent only resolves ``c`` to about sqrt(eps); a golden-section
    pass on a small bracket around its answer resolves kinks further.
    """
    res = minimize_scalar(fun, bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": tol, "maxiter": 500})
    cands = [(float(res.fun), float(res.x)), (fun(0.0), 0.0), (fun(1.0), 1.0)]
    x = float(res.x)
    for h in (1e-6, 1e-4):
        a, b = max(0.0, x - h), min(1.0, x + h)
        if a < x < b and fun(x) < min(fun(a), fun(b)):
            pol = minimize_scalar(fun, bracket=(a, x, b), method="golden",
                                  options={"xtol": 1e-15, "maxiter": 200})
            if a <= pol.x <= b:
                cands.append((float(pol.fun), float(pol.x)))
            break
    return min(cands)


def d_iso_upper(R1, R2, config: SearchConfig | None = None, extra_J=()) -> SearchResult:
    """Upper bound on the isometric distance from explicit embeddings.

    Tries identity-like and all offset zero extensions, a bottleneck
    eigen-aligned layout (Hermitian input), factorisation embeddings of
    scaled partial isometries and of ``extra_J``, then refines the best
    and ``config.restarts`` random frame pairs by Stiefel descent. The
    search stops once the certified lower bound is met.
    """
    cfg = config or SearchConfig()
    A, B = as_operator(R1), as_operator(R2)
    n1, n2 = A.shape[0], B.shape[0]
    N = cfg.target_dim or (n1 + n2)
    if N < max(n1, n2):
        raise ShapeError(f"target dimension {N} below max(n1, n2)")
    lower = d_iso_lower(A, B)
    target = lower + cfg.cert_tol * max(1.0, lower)
    best = SearchResult(INF, None, "none", lower)
    evals = 0

    def offer(pair, source):
        nonlocal evals
        if pair is None:
            return
        val = _norm2(difference_operator(pair, A, B))
        evals += 1
        if val < best.value:
            best.value, best.witness, best.source = val, pair, source

    zero_pairs = list(_zero_extension_pairs(n1, n2, N))
    for p in zero_pairs:
        offer(p, "zero-extension")
    aligned = []
    if _is_hermitian(A) and _is_hermitian(B):
        out = eigen_aligned_pair(A, B, N)
        if out is not None:
            aligned.append(out[0])
            offer(out[0], "eigen-aligned")
    if best.value > target and N >= n1 + n2:
        for W in _contraction_candidates(zero_pairs + aligned)[:16]:
            f = lambda c, W=W: _norm2(difference_operator(nagy_embedding(c * W), A, B))
            val, c = _brent_over_scale(f, tol=1e-10)
            evals += 1
            offer(_pad(nagy_embedding(c * W), N), "nagy")
    if N >= n1 + n2:
        for J in extra_J:
            offer(_pad(nagy_embedding(J), N), "nagy")
    if best.value > target:
        rng = np.random.default_rng(cfg.seed)
        starts = [(best.witness.iota1, best.witness.iota2, best.source + "+descent")]
        starts += [(_random_frame(rng, N, n1), _random_frame(rng, N, n2), "descent")
                   for _ in range(cfg.restarts)]
        for X1, X2, source in starts:
            f, Y1, Y2, k, exhausted = _stiefel_descent(A, B, X1, X2, cfg.steps,
                                                       cfg.step_tol, target)
            evals += k
            best.exhausted = best.exhausted or exhausted
            if f < best.value:
                offer(EmbeddingPair(Y1, Y2), source)
            if best.value <= target:
                break
    best.evaluations = evals
    best.certified = best.value <= target
    return best


def _clip_contraction(J):
    U, s, Vh = np.linalg.svd(J, full_matrices=False)
    return (U * np.clip(s, 0.0, 1.0)) @ Vh


def _random_contraction(rng, n2, n1):
    Z = rng.standard_normal((n2, n1)) + 1j * rng.standard_normal((n2, n1))
    U, s, Vh = np.linalg.svd(Z, full_matrices=False)
    return (U * rng.uniform(0.0, 1.0, size=s.shape)) @ Vh


def _que_descent(A, B, J, steps, step_tol, target):
    f, G = delta_J_grad(A, B, J)
    scale = max(1.0, _norm2(A), _norm2(B))
    t = 0.5 / scale
    evals = 1
    for _ in range(steps):
        if f <= target:
            return f, J, evals, False
        while True:
            Jn = _clip_contraction(J - t * G)
            fn, Gn = delta_J_grad(A, B, Jn)
            evals += 1
            if fn < f:
                J, f, G = Jn, fn, Gn
                t *= 2.0
                break
            t *= 0.5
            if t < step_tol:
                return f, J, evals, False
    return f, J, evals, True


def _sorted_partial_isometry(A, B):
    """``V2 V1^*`` matching ascending eigenvectors, truncated to the
    smaller dimension."""
    _, V1 = np.linalg.eigh(A)
    _, V2 = np.linalg.eigh(B)
    k = min(A.shape[0], B.shape[0])
    return V2[:, :k] @ V1[:, :k].conj().T, V2[:, -k:] @ V1[:, -k:].conj().T


def d_que_upper(R1, R2, config: SearchConfig | None = None, extra_pairs=()) -> SearchResult:
    """Upper bound on the quasi-unitary distance from explicit contractions.

    Candidates are ``J = iota2^* iota1`` for the embeddings the isometric
    search starts from (and ``extra_pairs``), every such partial isometry
    scaled by the best ``c`` in [0, 1] (Brent), then projected subgradient
    descent over all contractions (singular values clipped to [0, 1]).
    """
    cfg = config or SearchConfig()
    A, B = as_operator(R1), as_operator(R2)
    n1, n2 = A.shape[0], B.shape[0]
    N = cfg.target_dim or (n1 + n2)
    lower = d_que_lower(A, B)
    target = lower + cfg.cert_tol * max(1.0, lower)
    best = SearchResult(INF, None, "none", lower)
    evals = 0

    def offer(J, source):
        nonlocal evals
        val = delta_J(A, B, J)
        evals += 1
        if val < best.value:
            best.value, best.witness, best.source = val, J, source

    pairs = list(_zero_extension_pairs(n1, n2, N)) + list(extra_pairs)
    Ws = _contraction_candidates(pairs)
    if _is_hermitian(A) and _is_hermitian(B):
        out = eigen_aligned_pair(A, B, N)
        if out is not None:
            Ws.append(out[0].J)
        Ws.extend(_sorted_partial_isometry(as_hermitian(A), as_hermitian(B)))
    for W in Ws:
        offer(W, "embedding")
    for W in Ws:
        if best.value <= target:
            break
        if not np.any(W):
            continue
        val, c = _brent_over_scale(lambda c, W=W: delta_J(A, B, c * W))
        evals += 1
        if val < best.value:
            offer(c * W, "scaled")
    if best.value > target:
        rng = np.random.default_rng(cfg.seed)
        starts = [(best.witness, best.source + "+descent")]
        starts += [(_random_contraction(rng, n2, n1), "descent")
                   for _ in range(cfg.restarts)]
        for J0, source in starts:
            f, J, k, exhausted = _que_descent(A, B, J0, cfg.steps, cfg.step_tol, target)
            evals += k
            best.exhausted = best.exhausted or exhausted
            if f < best.value:
                offer(J, source)
            if best.value <= target:
                break
    best.evaluations = evals
    best.certified = best.value <= target
    return best


def d_iso_bracket_cmf(alpha1: Cmf, alpha2: Cmf) -> tuple:
    """(lower, upper) for the isometric distance of self-adjoint operators
    with the given Cmfs.

    Upper: the unitary distance after compressing into a common space,
    where each isometry is onto or has finite or infinite co-dimension.
    With infinite co-dimension 0 joins the essential set, where the
    unitary distance of the compressions is their Lévy-Prokhorov distance.
    Lower: Hausdorff distance of the supports after adjoining 0 to each
    side that is not onto, minimised over the feasible cases; the
    unitary distance itself if both isometries must be onto.
    """
    d1, d2 = _cmf_dim(alpha1), _cmf_dim(alpha2)
    ups, lows = [], []
    inf1 = embedded_cmf(alpha1, INF)
    inf2 = embedded_cmf(alpha2, INF)
    ups.append(lp_delta(inf1, inf2))
    if d2 == INF:
        ups.append(lp_delta(inf1, alpha2))
    if d1 == INF:
        ups.append(lp_delta(alpha1, inf2))
    if d1 == d2:
        ups.append(lp_delta(alpha1, alpha2))
    if d1 != INF and d2 != INF:
        for N in range(int(max(d1, d2)), int(d1 + d2) + 1):
            ups.append(lp_delta(embedded_cmf(alpha1, N - d1), embedded_cmf(alpha2, N - d2)))
    z = RealSet(((0.0, 0.0),))
    f1 = RealSet.from_points(alpha1.points).union(alpha1.essential)
    f2 = RealSet.from_points(alpha2.points).union(alpha2.essential)
    lows.append(hausdorff(f1.union(z), f2.union(z)))
    if d1 == d2:
        lows.append(lp_delta(alpha1, alpha2))
    if d1 < d2 or d2 == INF:
        lows.append(hausdorff(f1.union(z), f2))
    if d2 < d1 or d1 == INF:
        lows.append(hausdorff(f1, f2.union(z)))
    lower = min(lows)
    if alpha1.essential.contains(0.0) and alpha2.essential.contains(0.0):
        lower = lp_delta(alpha1, alpha2)
    return lower, min(ups)


# ------------------------------------------------------------------ report


@dataclass
class Verdict:
    """One checked relation ``lhs (op) rhs`` with its slack."""

    name: str
    lhs: float
    rhs: float
    slack: float
    status: str
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack, "status": self.status, "note": self.note}


@dataclass
class DistanceReport:
    d_haus_spec: float | None
    d_spec: float | None
    d_uni: float | None
    d_iso_lower: float
    d_iso_upper: float
    d_que_lower: float
    d_que_upper: float
    norm_diff: float | None = None
    chain_verdicts: list = field(default_factory=list)
    kind: str = "matrix"

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in
               ("kind", "d_haus_spec", "d_spec", "d_uni", "norm_diff", "d_iso_lower",
                "d_iso_upper", "d_que_lower", "d_que_upper")}
        out["chain_verdicts"] = [v.to_dict() for v in self.chain_verdicts]
        return out

    def verdict(self, name: str) -> Verdict:
        for v in self.chain_verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return all(v.status != "fail" for v in self.chain_verdicts)


def _le(name, lhs, rhs, tol=CHAIN_TOL, note=""):
    if lhs is None or rhs is None:
        return Verdict(name, lhs, rhs, None, "not-applicable", note or "undefined side")
    slack = rhs - lhs if not (math.isinf(rhs) and math.isinf(lhs)) else 0.0
    scale = max(1.0, abs(lhs) if math.isfinite(lhs) else 1.0)
    status = "pass" if slack >= -tol * scale else "fail"
    return Verdict(name, lhs, rhs, slack, status, note)


def _eq(name, lhs, rhs, tol=CHAIN_TOL, note=""):
    if lhs == rhs:
        return Verdict(name, lhs, rhs, 0.0, "pass", note)
    gap = abs(lhs - rhs)
    scale = max(1.0, abs(lhs) if math.isfinite(lhs) else 1.0)
    return Verdict(name, lhs, rhs, -gap, "pass" if gap <= tol * scale else "fail", note)


def _na(name, lhs, rhs, hypothesis):
    slack = None if lhs is None or rhs is None else rhs - lhs
    return Verdict(name, lhs, rhs, slack, "not-applicable", f"hypothesis unmet: {hypothesis}")


def _report_cmf(a1: Cmf, a2: Cmf, tol: float = CHAIN_TOL) -> DistanceReport:
    le, eq = partial(_le, tol=tol), partial(_eq, tol=tol)
    z_ess = a1.essential.contains(0.0) and a2.essential.contains(0.0)
    f1 = RealSet.from_points(a1.points).union(a1.essential)
    f2 = RealSet.from_points(a2.points).union(a2.essential)
    dh = hausdorff(f1, f2)
    du = d_uni_cmf(a1, a2)
    ds = d_spec(a1, a2) if _cmf_dim(a1) == _cmf_dim(a2) else INF
    lo, up = d_iso_bracket_cmf(a1, a2)
    rep = DistanceReport(dh, ds, du, lo, up, lo / SQRT3, up, kind="cmf")
    v = rep.chain_verdicts
    v.append(le("d_haus <= d_uni", dh, du))
    v.append(eq("d_uni = d_spec", du, ds))
    v.append(le("d_iso_lower <= d_iso_upper", lo, up))
    if a1.is_purely_essential and a2.is_purely_essential:
        v.append(eq("d_haus = d_uni (purely essential)", dh, du))
    else:
        v.append(_na("d_haus = d_uni (purely essential)", dh, du, "purely essential spectra"))
    if z_ess:
        v.append(eq("d_iso = d_uni", up, du))
    else:
        v.append(_na("d_iso = d_uni", up, du, "0 in both essential spectra"))
    return rep


def inequality_report(A, B, config: SearchConfig | None = None) -> DistanceReport:
    """Distances of a pair of matrices or Cmfs and the relations between
    them that hold in general, each with its slack.

    Relations that need a hypothesis the pair does not satisfy are listed
    as not-applicable with the hypothesis named; their observed sides are
    still recorded so that failures of the unconditional form are visible.
    """
    if isinstance(A, Cmf) and isinstance(B, Cmf):
        return _report_cmf(A, B, (config or SearchConfig()).chain_tol)
    cfg = config or SearchConfig()
    le, eq = partial(_le, tol=cfg.chain_tol), partial(_eq, tol=cfg.chain_tol)
    R1, R2 = as_operator(A), as_operator(B)
    herm = _is_hermitian(R1) and _is_hermitian(R2)
    same = R1.shape == R2.shape
    que = d_que_upper(R1, R2, cfg)
    iso = d_iso_upper(R1, R2, cfg, extra_J=[que.witness])
    if iso.value < INF:
        # a better embedding may also improve the contraction
        J_iso = iso.witness.J
        if delta_J(R1, R2, J_iso) < que.value:
            que.value, que.witness, que.source = delta_J(R1, R2, J_iso), J_iso, "from-embedding"
    nd = _norm2(R1 - R2) if same else None
    if herm:
        c1, c2 = cmf_from_hermitian(R1), cmf_from_hermitian(R2)
        f1 = RealSet.from_points(c1.points)
        f2 = RealSet.from_points(c2.points)
        dh = hausdorff(f1, f2)
        du = d_uni_hermitian(R1, R2)
        ds = d_spec(c1, c2)
    else:
        dh = ds = du = None
    rep = DistanceReport(dh, ds, du, iso.lower, iso.value, que.lower, que.value, nd)
    v = rep.chain_verdicts
    if herm:
        v.append(le("d_haus <= d_uni", dh, du))
        v.append(eq("d_uni = d_spec", du, ds))
        v.append(eq("d_uni = lp_delta", du, d_uni_cmf(c1, c2)))
        if same:
            v.append(le("d_haus <= |R1 - R2|", dh, nd))
        else:
            v.append(_na("d_haus <= |R1 - R2|", dh, nd, "same Hilbert space"))
        v.append(le("d_iso_upper <= d_uni", iso.value, du))
        v.append(_na("d_iso = d_uni", iso.value, du, "0 in both essential spectra"))
        v.append(_na("d_haus <= d_iso", dh, iso.value, "0 in both essential spectra"))
    else:
        v.append(_na("d_haus <= d_uni", None, None, "self-adjoint operators"))
    if same:
        v.append(le("d_iso_upper <= |R1 - R2|", iso.value, nd))
    v.append(le("d_iso_lower <= d_iso_upper", iso.lower, iso.value))
    v.append(le("d_que_lower <= d_que_upper", que.lower, que.value))
    v.append(le("d_que_upper <= d_iso_upper", que.value, iso.value))
    v.append(le("delta_J(iota2* iota1) <= |D|",
                 delta_J(R1, R2, iso.witness.J), iso.value))
    nagy = _norm2(difference_operator(nagy_embedding(que.witness), R1, R2))
    v.append(le("|D(nagy J)| <= sqrt3 delta_J", nagy, SQRT3 * que.value))
    v.append(le("d_iso_upper <= sqrt3 d_que_upper", iso.value, SQRT3 * que.value))
    return rep

