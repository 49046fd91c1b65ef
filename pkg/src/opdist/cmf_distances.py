"""Set and Cmf distances: Hausdorff, Lévy-Prokhorov and its finite part.

Every infimum over ε here is evaluated exactly from the finitely many
support features; no bisection with tolerances is involved.

Three routes are kept deliberately separate so they can check each other:

* :func:`acute_delta` scans the critical open intervals (single essential
  points and runs of consecutive discrete points);
* :func:`delta_fin` solves the finite-set condition as a Hall-type flow
  problem;
* :func:`d_disc` enumerates finite subsets literally.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .cmf import INF, Cmf, RealSet, supports

__all__ = [
    "one_sided_hausdorff",
    "hausdorff",
    "candidate_eps",
    "acute_delta",
    "lp_delta",
    "acute_delta_fin",
    "delta_fin",
    "d_disc",
    "d_spec",
    "pointwise_radius",
    "DISC_ENUM_LIMIT",
]

DISC_ENUM_LIMIT = 14


def one_sided_hausdorff(A: RealSet, B: RealSet) -> float:
    """``sup_{x in A} dist(x, B)``; 0 for empty A, inf for empty B."""
    if not A:
        return 0.0
    if not B:
        return INF
    gaps = [(b0[1] + b1[0]) / 2 for b0, b1 in zip(B.intervals, B.intervals[1:])]
    best = 0.0
    for a0, a1 in A:
        probes = [a0, a1] + [m for m in gaps if a0 < m < a1]
        best = max(best, max(B.distance(x) for x in probes))
    return best


def hausdorff(A: RealSet, B: RealSet) -> float:
    """Hausdorff distance of two compact sets given as interval unions."""
    if not A and not B:
        return 0.0
    if not A or not B:
        return INF
    return max(one_sided_hausdorff(A, B), one_sided_hausdorff(B, A))


def candidate_eps(alpha1: Cmf, alpha2: Cmf) -> np.ndarray:
    """Sorted values where the ε-feasibility predicates can change.

    Differences of features across the two Cmfs, plus half-gaps between
    features of the same Cmf (the latter are where distance-to-a-union
    peaks inside an interval), plus 0.
    """
    f1 = alpha1.features()
    f2 = alpha2.features()
    vals = {0.0}
    vals.update(abs(a - b) for a in f1 for b in f2)
    for f in (f1, f2):
        vals.update(abs(a - b) / 2 for a, b in itertools.combinations(f, 2))
    return np.array(sorted(vals))


def _features_by_distance(alpha: Cmf, dist_point, dist_interval):
    """(distance, mass) for every support feature of ``alpha``."""
    out = [(dist_point(p), n) for p, n in alpha.discrete]
    out += [(dist_interval(e0, e1), INF) for e0, e1 in alpha.essential]
    out.sort(key=lambda t: t[0])
    return out


def _reach(feats, mass) -> float:
    """Smallest radius at which the accumulated mass reaches ``mass``."""
    acc = 0
    for d, n in feats:
        acc = acc + n
        if acc >= mass:
            return d
    return INF


def _discrete_blocks(alpha: Cmf) -> list:
    """Maximal groups of consecutive discrete points not separated by
    essential intervals."""
    blocks, current = [], []
    ess = list(alpha.essential)
    k = 0
    for p, n in alpha.discrete:
        while k < len(ess) and ess[k][1] < p:
            if current:
                blocks.append(current)
                current = []
            k += 1
        current.append((p, n))
    if current:
        blocks.append(current)
    return blocks


def acute_delta(alpha1: Cmf, alpha2: Cmf) -> float:
    """One-sided Lévy-Prokhorov quantity.

    ``sup_I inf{ε : α1*(I) <= α2*(B_ε(I))}`` over open intervals ``I``.
    Intervals meeting the essential part of ``alpha1`` reduce to the
    one-sided Hausdorff distance of the essential sets; the remaining
    critical intervals are tight neighbourhoods of runs of consecutive
    discrete points, for which the closed ε-neighbourhood of the run's
    hull must carry the run's mass.
    """
    if alpha1.is_empty:
        return 0.0
    best = one_sided_hausdorff(alpha1.essential, alpha2.essential)
    for block in _discrete_blocks(alpha1):
        for i in range(len(block)):
            mass = 0
            for j in range(i, len(block)):
                mass += block[j][1]
                lo, hi = block[i][0], block[j][0]
                feats = _features_by_distance(
                    alpha2,
                    lambda q: max(lo - q, q - hi, 0.0),
                    lambda e0, e1: max(lo - e1, e0 - hi, 0.0),
                )
                best = max(best, _reach(feats, mass))
                if best == INF:
                    return INF
    return best


def lp_delta(alpha1: Cmf, alpha2: Cmf) -> float:
    """Symmetric Lévy-Prokhorov distance of two Cmfs."""
    return max(acute_delta(alpha1, alpha2), acute_delta(alpha2, alpha1))


def _hall_feasible(alpha1: Cmf, targets, eps: float) -> bool:
    """Can the discrete mass of ``alpha1`` be routed to ``targets``
    (list of (distance-function, capacity)) within distance ``eps``?"""
    src = alpha1.discrete
    need = sum(n for _, n in src)
    big = need + 1
    n_src, n_tgt = len(src), len(targets)
    size = 2 + n_src + n_tgt
    s, t = 0, size - 1
    rows, cols, caps = [], [], []
    for i, (p, n) in enumerate(src):
        rows.append(s), cols.append(1 + i), caps.append(n)
        for j, (dist, cap) in enumerate(targets):
            if dist(p) <= eps:
                rows.append(1 + i), cols.append(1 + n_src + j), caps.append(big)
    for j, (_, cap) in enumerate(targets):
        rows.append(1 + n_src + j), cols.append(t), caps.append(big if cap == INF else cap)
    graph = csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)), shape=(size, size))
    return maximum_flow(graph, s, t).flow_value >= need


def acute_delta_fin(alpha1: Cmf, alpha2: Cmf) -> float:
    """One-sided finite Lévy-Prokhorov quantity via bipartite flow.

    The condition "``α1(F) <= α2*(B_ε(F))`` for every finite ``F`` in the
    discrete support" is Hall's condition for routing every unit of
    discrete mass of ``alpha1`` to a feature of ``alpha2`` within ``ε``;
    the smallest feasible candidate is found by binary search.
    """
    if not alpha1.discrete:
        return 0.0
    targets = [((lambda x, q=q: abs(x - q)), n) for q, n in alpha2.discrete]
    targets += [((lambda x, iv=iv: RealSet((iv,)).distance(x)), INF)
                for iv in alpha2.essential]
    if not targets:
        return INF
    cands = sorted({dist(p) for p, _ in alpha1.discrete for dist, _ in targets})
    if not _hall_feasible(alpha1, targets, cands[-1]):
        return INF
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _hall_feasible(alpha1, targets, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(cands[lo])


def delta_fin(alpha1: Cmf, alpha2: Cmf) -> float:
    """Symmetric finite Lévy-Prokhorov distance (0 if both purely essential)."""
    return max(acute_delta_fin(alpha1, alpha2), acute_delta_fin(alpha2, alpha1))


def _subset_radius(alpha1: Cmf, alpha2: Cmf) -> float:
    pts = alpha1.discrete
    if not pts:
        return 0.0
    if len(pts) > DISC_ENUM_LIMIT:
        return acute_delta_fin(alpha1, alpha2)
    best = 0.0
    for k in range(1, len(pts) + 1):
        for F in itertools.combinations(pts, k):
            locs = [p for p, _ in F]
            mass = sum(n for _, n in F)
            feats = _features_by_distance(
                alpha2,
                lambda q: min(abs(q - p) for p in locs),
                lambda e0, e1: min(RealSet(((e0, e1),)).distance(p) for p in locs),
            )
            best = max(best, _reach(feats, mass))
            if best == INF:
                return INF
    return best


def d_disc(alpha1: Cmf, alpha2: Cmf) -> float:
    """Multiplicity-aware distance of the discrete spectra.

    Evaluated literally: for every nonempty subset ``F`` of one discrete
    support, the smallest ``ε`` with ``rank 1_F <= rank 1_{B_ε(F)}`` of
    the other side, maximised over ``F`` and both directions. Supports
    with more than ``DISC_ENUM_LIMIT`` points fall back to the flow route.
    """
    return max(_subset_radius(alpha1, alpha2), _subset_radius(alpha2, alpha1))


def d_spec(alpha1: Cmf, alpha2: Cmf) -> float:
    """``max(hausdorff(ess1, ess2), d_disc)``."""
    return max(hausdorff(alpha1.essential, alpha2.essential), d_disc(alpha1, alpha2))


def pointwise_radius(alpha1: Cmf, alpha2: Cmf) -> float:
    """Smallest ``r`` with ``α1(λ) <= α2*(B_r(λ))`` for every ``λ``.

    Never exceeds :func:`acute_delta`; equal to it when ``alpha1`` is
    purely essential.
    """
    if alpha1.is_empty:
        return 0.0
    best = one_sided_hausdorff(alpha1.essential, alpha2.essential)
    for p, n in alpha1.discrete:
        feats = _features_by_distance(
            alpha2, lambda q: abs(q - p),
            lambda e0, e1: RealSet(((e0, e1),)).distance(p))
        best = max(best, _reach(feats, n))
    return best


def haus_supports(alpha1: Cmf, alpha2: Cmf) -> dict:
    """Hausdorff distances of discrete, essential and full supports."""
    d1, e1, f1 = supports(alpha1)
    d2, e2, f2 = supports(alpha2)
    return {"disc": hausdorff(d1, d2), "ess": hausdorff(e1, e2), "full": hausdorff(f1, f2)}


def is_finite(x: float) -> bool:
    return not math.isinf(x)
