"""Weidmann and quasi-unitary convergence of operator sequences.

The operators are resolvents already; ``z0`` is carried along as
metadata only. The infinite parent space is truncated to the supplied
indices, which loses nothing: each difference operator only involves
the components of its own index and of the limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .embeddings import EmbeddingPair, check_contraction, difference_operator
from .errors import ShapeError
from .linalg_core import _norm2, as_operator, psd_sqrt
from .op_distances import _defect_factors, delta_J_terms

__all__ = [
    "OperatorSequence",
    "ConvergenceReport",
    "normalize_identification",
    "parent_space_assemble",
    "weidmann_defects",
    "que_terms",
    "que_defects",
    "equivalence_check",
]

TOL = 1e-9


@dataclass
class OperatorSequence:
    """Items ``R_1..R_K``, a limit ``R_inf`` and optional identifications
    ``J_n : H_n -> H_inf``."""

    items: list
    limit: np.ndarray
    J: list | None = None
    z0: complex | None = None

    def __post_init__(self):
        self.items = [as_operator(R) for R in self.items]
        self.limit = as_operator(self.limit)
        if self.J is not None:
            if len(self.J) != len(self.items):
                raise ShapeError(f"{len(self.J)} identification operators for "
                                 f"{len(self.items)} items")
            Js = []
            for n, (R, J) in enumerate(zip(self.items, self.J), 1):
                J = np.atleast_2d(np.asarray(J, dtype=complex))
                if J.shape != (self.limit.shape[0], R.shape[0]):
                    raise ShapeError(f"J_{n} has shape {J.shape}, expected "
                                     f"{(self.limit.shape[0], R.shape[0])}")
                Js.append(J)
            self.J = Js

    def require_J(self) -> list:
        if self.J is None:
            raise ShapeError("identification operators required")
        return self.J


def normalize_identification(J):
    """``J / |J|`` and a flag that is True when ``J = 0`` (returned as is)."""
    J = np.atleast_2d(np.asarray(J, dtype=complex))
    nrm = _norm2(J)
    if nrm == 0.0:
        return J.copy(), True
    return J / nrm, False


def parent_space_assemble(seq: OperatorSequence) -> list:
    """Embedding pairs ``(iota_n, iota_inf)`` into one parent space.

    The parent space is ``H_inf ⊕ H_1 ⊕ ... ⊕ H_K``; ``iota_inf`` is the
    injection of the first summand and ``iota_n f = (J_n f, 0, .., W_n f, ..)``
    with ``W_n = (id - J_n^* J_n)^(1/2)`` in the n-th summand.
    """
    Js = [check_contraction(J) for J in seq.require_J()]
    m = seq.limit.shape[0]
    dims = [R.shape[0] for R in seq.items]
    N = m + sum(dims)
    iota_inf = np.zeros((N, m), complex)
    iota_inf[:m] = np.eye(m)
    pairs = []
    offset = m
    for J, k in zip(Js, dims):
        iota = np.zeros((N, k), complex)
        iota[:m] = J
        iota[offset:offset + k] = psd_sqrt(np.eye(k) - J.conj().T @ J)
        offset += k
        pairs.append(EmbeddingPair(iota, iota_inf))
    return pairs


def weidmann_defects(seq: OperatorSequence, pairs) -> list:
    """``|iota_n R_n iota_n^* - iota_inf R_inf iota_inf^*|`` per n."""
    return [_norm2(difference_operator(p, R, seq.limit)) for p, R in zip(pairs, seq.items)]


def que_terms(R, R_inf, J) -> dict:
    """All defect terms for one index.

    ``defect_n`` and ``defect_inf`` follow the convergence definition
    literally (``R (id - J^*J) R``, no adjoint); ``delta_J`` is the
    distance-style quantity with adjoints and both intertwining terms;
    ``proof_bound`` is the sum of the three block norms that bound the
    Weidmann defect of the factorisation embedding.
    """
    R, R_inf = as_operator(R), as_operator(R_inf)
    J = np.atleast_2d(np.asarray(J, dtype=complex))
    n, m = R.shape[0], R_inf.shape[0]
    Jh = J.conj().T
    norm_excess = max(_norm2(J) - 1.0, 0.0)
    d_n = np.sqrt(_norm2(R @ (np.eye(n) - Jh @ J) @ R))
    d_inf = np.sqrt(_norm2(R_inf @ (np.eye(m) - J @ Jh) @ R_inf))
    inter = _norm2(R_inf @ J - J @ R)
    out = {"norm_excess": norm_excess, "defect_n": float(d_n), "defect_inf": float(d_inf),
           "intertwining": inter}
    out["headline"] = max(out.values())
    if norm_excess <= 1e-10:
        t = delta_J_terms(R, R_inf, J)
        out["delta_J"] = max(t)
        _, F_inf = _defect_factors(J)
        out["proof_bound"] = t[0] + _norm2(F_inf @ R_inf.conj().T) + inter
    return out


def que_defects(seq: OperatorSequence) -> list:
    """Headline quasi-unitary defect per n (largest literal term)."""
    return [que_terms(R, seq.limit, J)["headline"]
            for R, J in zip(seq.items, seq.require_J())]


@dataclass
class ConvergenceReport:
    weidmann_defects: list
    que_defects: list
    que_defects_adjoint: list
    proof_bounds: list
    normalized: list
    verdicts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"weidmann_defects": self.weidmann_defects,
                "que_defects": self.que_defects,
                "que_defects_adjoint": self.que_defects_adjoint,
                "proof_bounds": self.proof_bounds,
                "normalized": self.normalized,
                "verdicts": self.verdicts}


def _nonincreasing(xs, tol=TOL) -> bool:
    return all(b <= a + tol for a, b in zip(xs, xs[1:]))


def equivalence_check(seq: OperatorSequence, tol: float = TOL) -> ConvergenceReport:
    """Compare Weidmann and quasi-unitary defects index by index.

    Identifications with norm above 1 are first divided by their norm.
    Checked, with the worst slack recorded: Weidmann ≤ proof bound ≤
    3 · QUE defect, and δ_J with ``J = iota_inf^* iota_n`` ≤ Weidmann.
    """
    Js, flags = [], []
    for J in seq.require_J():
        if _norm2(J) > 1 + 1e-10:
            J, _ = normalize_identification(J)
            flags.append(True)
        else:
            flags.append(False)
        Js.append(J)
    work = OperatorSequence(seq.items, seq.limit, Js, seq.z0)
    pairs = parent_space_assemble(work)
    weid = weidmann_defects(work, pairs)
    terms = [que_terms(R, work.limit, p.iota2.conj().T @ p.iota1)
             for R, p in zip(work.items, pairs)]
    que = [t["headline"] for t in terms]
    que_adj = [t["delta_J"] for t in terms]
    bounds = [t["proof_bound"] for t in terms]
    J_err = max([_norm2(p.iota2.conj().T @ p.iota1 - J) for p, J in zip(pairs, Js)] + [0.0])

    def worst(lhs, rhs):
        return min([r - l for l, r in zip(lhs, rhs)] + [np.inf])

    s_proof = worst(weid, bounds)
    s_three = worst(weid, [3 * q for q in que])
    s_adj = worst(que_adj, weid)
    verdicts = {
        "J_factorises": {"max_error": J_err, "status": "pass" if J_err <= 1e-12 else "fail"},
        "weidmann <= proof_bound": {"slack": s_proof, "status": _st(s_proof, tol)},
        "weidmann <= 3 que": {"slack": s_three, "status": _st(s_three, tol)},
        "delta_J <= weidmann": {"slack": s_adj, "status": _st(s_adj, tol)},
        "weidmann_nonincreasing": _nonincreasing(weid),
        "que_nonincreasing": _nonincreasing(que),
    }
    same = verdicts["weidmann <= 3 que"]["status"] == "pass" and \
        verdicts["delta_J <= weidmann"]["status"] == "pass"
    equal = all(abs(a - b) <= tol * max(1.0, abs(a)) for a, b in zip(weid, que))
    verdicts["speed"] = "equal" if equal else ("same speed" if same else "inconsistent")
    return ConvergenceReport(weid, que, que_adj, bounds, flags, verdicts)


def _st(slack, tol):
    return "pass" if slack >= -tol else "fail"
