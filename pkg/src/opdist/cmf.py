"""Crude multiplicity functions on a finite representation.

A :class:`Cmf` holds finitely many discrete points with finite
multiplicity and a finite union of disjoint closed intervals carrying
multiplicity infinity (degenerate intervals ``[a, a]`` are essential
points). Counts are plain ``int`` with ``math.inf`` standing for the
infinite cardinal, so ordinary ``+`` and ``<=`` give the extended
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .errors import CapacityError, DomainError, IsolationError, RepresentationError
from .linalg_core import hermitian_eigen

__all__ = [
    "INF",
    "Count",
    "RealSet",
    "Cmf",
    "ModelOperator",
    "validate_cmf",
    "cmf_measure",
    "cmf_measure_finite_set",
    "cmf_measure_closed",
    "supports",
    "cmf_from_hermitian",
    "operator_from_cmf",
    "embedded_cmf",
]

INF = math.inf
Count = Union[int, float]


@dataclass(frozen=True)
class RealSet:
    """Finite union of disjoint closed intervals, sorted; points are ``(a, a)``."""

    intervals: tuple = ()

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        for a, b in ivs:
            if not a <= b:
                raise RepresentationError(f"interval [{a}, {b}] has a > b")
        for (a0, b0), (a1, b1) in zip(ivs, ivs[1:]):
            if not b0 < a1:
                raise RepresentationError(
                    f"intervals [{a0}, {b0}] and [{a1}, {b1}] overlap or are unsorted")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def normalized(cls, intervals: Iterable) -> "RealSet":
        """Sort and merge overlapping or touching intervals."""
        ivs = sorted((float(a), float(b)) for a, b in intervals)
        merged = []
        for a, b in ivs:
            if a > b:
                raise RepresentationError(f"interval [{a}, {b}] has a > b")
            if merged and a <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], b))
            else:
                merged.append((a, b))
        return cls(tuple(merged))

    @classmethod
    def from_points(cls, points: Iterable[float]) -> "RealSet":
        return cls.normalized((p, p) for p in points)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def union(self, other: "RealSet") -> "RealSet":
        return RealSet.normalized(self.intervals + other.intervals)

    def contains(self, x: float) -> bool:
        return any(a <= x <= b for a, b in self.intervals)

    def distance(self, x: float) -> float:
        """Distance from ``x`` to the set (``inf`` for the empty set)."""
        best = INF
        for a, b in self.intervals:
            if x < a:
                d = a - x
            elif x > b:
                d = x - b
            else:
                return 0.0
            best = min(best, d)
        return best

    def features(self) -> list:
        """All interval endpoints, sorted and deduplicated."""
        return sorted({v for iv in self.intervals for v in iv})


@dataclass(frozen=True)
class Cmf:
    """A validated crude multiplicity function.

    ``discrete`` is a sorted tuple of ``(point, multiplicity)``;
    ``essential`` is a :class:`RealSet`. Construct through
    :func:`validate_cmf` or :meth:`Cmf.make`.
    """

    discrete: tuple = ()
    essential: RealSet = field(default_factory=RealSet)

    @classmethod
    def make(cls, discrete=None, essential=()) -> "Cmf":
        return validate_cmf(discrete or {}, essential)

    @property
    def points(self) -> list:
        return [p for p, _ in self.discrete]

    @property
    def total_discrete(self) -> int:
        return sum(n for _, n in self.discrete)

    @property
    def is_purely_discrete(self) -> bool:
        return not self.essential

    @property
    def is_purely_essential(self) -> bool:
        return not self.discrete

    @property
    def is_empty(self) -> bool:
        return not self.discrete and not self.essential

    def value(self, lam: float) -> Count:
        """Pointwise value α(λ)."""
        if self.essential.contains(lam):
            return INF
        for p, n in self.discrete:
            if p == lam:
                return n
        return 0

    def features(self) -> list:
        """Discrete points and essential endpoints, sorted."""
        return sorted(set(self.points) | set(self.essential.features()))

    def to_dict(self) -> dict:
        return {"discrete": [[p, n] for p, n in self.discrete],
                "essential": [[a, b] for a, b in self.essential]}


def validate_cmf(discrete, essential=()) -> Cmf:
    """Check the crude multiplicity function conditions and build a Cmf.

    ``discrete`` is a mapping point -> multiplicity or an iterable of
    pairs; ``essential`` an iterable of ``(a, b)`` with ``a <= b``.
    Essential intervals must be disjoint (the preimage of infinity is then
    closed) and every discrete point must keep positive distance to the
    rest of the support.
    """
    items = discrete.items() if hasattr(discrete, "items") else discrete
    pts: dict = {}
    for p, n in items:
        p = float(p)
        if not math.isfinite(p):
            raise DomainError(f"discrete point {p} is not finite")
        if isinstance(n, float) and not n.is_integer():
            raise DomainError(f"multiplicity {n} at {p} is not an integer")
        n = int(n)
        if n <= 0:
            raise DomainError(f"multiplicity {n} at {p} must be positive")
        if p in pts:
            raise RepresentationError(f"discrete point {p} listed twice")
        pts[p] = n
    ivs = []
    for iv in essential:
        a, b = iv
        a, b = float(a), float(b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError("essential interval endpoints must be finite")
        ivs.append((a, b))
    ess = RealSet(tuple(sorted(ivs)))
    for p in pts:
        if ess.distance(p) == 0.0:
            raise IsolationError(f"discrete point {p} lies in the essential set")
    return Cmf(tuple(sorted(pts.items())), ess)


def _sum(counts) -> Count:
    total = 0
    for c in counts:
        total = total + c
    return total


def cmf_measure(alpha: Cmf, interval) -> Count:
    """Measure of the open interval ``(a, b)``."""
    a, b = interval
    if not a < b:
        return 0
    if any(e0 < b and e1 > a for e0, e1 in alpha.essential):
        return INF
    return _sum(n for p, n in alpha.discrete if a < p < b)


def cmf_measure_finite_set(alpha: Cmf, points) -> Count:
    """Sum of pointwise values over a finite set."""
    return _sum(alpha.value(float(x)) for x in set(points))


def cmf_measure_closed(alpha: Cmf, closed: RealSet) -> Count:
    """Measure of a finite union of closed intervals."""
    for e0, e1 in alpha.essential:
        for a, b in closed:
            if e0 <= b and e1 >= a:
                return INF
    return _sum(n for p, n in alpha.discrete if closed.contains(p))


def supports(alpha: Cmf):
    """Discrete support, essential support and full support as RealSets."""
    disc = RealSet.from_points(alpha.points)
    return disc, alpha.essential, disc.union(alpha.essential)


def cmf_from_hermitian(R, tau: float | None = None) -> Cmf:
    """Purely discrete Cmf of a Hermitian matrix (cluster means as points)."""
    es = hermitian_eigen(R, tau)
    pts = {float(r): int(m) for r, m in zip(es.representatives, es.multiplicities)}
    return validate_cmf(pts)


@dataclass(frozen=True)
class ModelOperator:
    """A Cmf together with a diagonal matrix realizing (or truncating) it."""

    cmf: Cmf
    matrix: np.ndarray

    @property
    def tag(self) -> str:
        return "finite" if self.cmf.is_purely_discrete else "infinite"


def _allocate(lengths, budget):
    counts = [1] * len(lengths)
    extra = budget - len(lengths)
    movable = [i for i, L in enumerate(lengths) if L > 0]
    if extra > 0 and movable:
        total = sum(lengths[i] for i in movable)
        shares = [extra * lengths[i] / total for i in movable]
        base = [int(math.floor(s)) for s in shares]
        rest = extra - sum(base)
        order = sorted(range(len(movable)), key=lambda k: (-(shares[k] - base[k]), k))
        for k in order[:rest]:
            base[k] += 1
        for k, i in enumerate(movable):
            counts[i] += base[k]
    return counts


def operator_from_cmf(alpha: Cmf, budget: int) -> ModelOperator:
    """Diagonal realization of ``alpha`` in dimension ``budget``.

    Discrete points appear with their multiplicity. When an essential part
    exists the remaining budget samples each essential interval at
    equispaced points (endpoints included), shared in proportion to
    interval length; a purely discrete ``alpha`` uses exactly its total
    multiplicity regardless of a larger budget.
    """
    budget = int(budget)
    if budget <= 0:
        raise DomainError("budget must be positive")
    diag = [p for p, n in alpha.discrete for _ in range(n)]
    if len(diag) > budget:
        raise CapacityError(
            f"budget {budget} smaller than discrete multiplicity {len(diag)}")
    ivs = list(alpha.essential)
    if ivs:
        remaining = budget - len(diag)
        if remaining < len(ivs):
            raise CapacityError(
                f"budget leaves {remaining} slots for {len(ivs)} essential intervals")
        counts = _allocate([b - a for a, b in ivs], remaining)
        for (a, b), k in zip(ivs, counts):
            diag.extend([a] if k == 1 or a == b else np.linspace(a, b, k).tolist())
            if a == b and k > 1:
                diag.extend([a] * (k - 1))
    diag.sort()
    return ModelOperator(alpha, np.diag(np.array(diag, dtype=complex)))


def embedded_cmf(alpha: Cmf, codim, with_flags: bool = False):
    """Cmf of ``ι R ι*`` for an isometry ``ι`` of co-dimension ``codim``.

    A finite ``codim > 0`` adds ``codim`` to the discrete mass at 0; an
    infinite one adjoins 0 to the essential set, absorbing any discrete
    mass at 0 (reported as ``merged_zero`` when ``with_flags``).
    """
    merged = False
    if codim == 0 or alpha.essential.contains(0.0):
        out = alpha
    elif codim == INF or codim == "inf":
        disc = {p: n for p, n in alpha.discrete if p != 0.0}
        merged = len(disc) != len(alpha.discrete)
        ess = alpha.essential.union(RealSet(((0.0, 0.0),)))
        out = validate_cmf(disc, ess.intervals)
    else:
        codim = int(codim)
        if codim < 0:
            raise DomainError("codim must be nonnegative")
        disc = dict(alpha.discrete)
        disc[0.0] = disc.get(0.0, 0) + codim
        out = validate_cmf(disc, alpha.essential.intervals)
    if with_flags:
        return out, {"merged_zero": merged}
    return out
