"""Registry of worked examples with known values.

Each entry computes its quantities with the library and pairs them with
the value known in closed form. ``run_example`` returns rows with
``id, description, expected, computed, abs_diff, tol, status``.
"""

from __future__ import annotations

import math

import numpy as np

from .cmf import INF, Cmf, embedded_cmf, supports
from .cmf_distances import acute_delta, hausdorff, lp_delta, pointwise_radius
from .embeddings import EmbeddingPair, difference_operator, zero_extension
from .linalg_core import operator_norm
from .op_distances import (
    d_iso_scalar,
    d_iso_upper,
    d_que_scalar,
    d_que_to_zero,
    d_que_upper,
    d_uni_cmf,
    d_uni_hermitian,
)

__all__ = ["EXAMPLES", "run_example", "example_names"]


def _row(eid, desc, expected, computed, tol, relation="eq"):
    if relation == "le":
        diff = max(computed - expected, 0.0)
        ok = computed <= expected + tol
    elif expected == computed:
        diff, ok = 0.0, True
    else:
        diff = abs(expected - computed)
        ok = diff <= tol
    return {"id": eid, "description": desc, "expected": expected, "computed": computed,
            "abs_diff": diff, "tol": tol, "relation": relation,
            "status": "pass" if ok else "fail"}


def _norm_diff():
    R1 = np.diag([1.0, 2.0])
    R2 = 0.5 * np.array([[3.0, 1.0], [1.0, 3.0]])
    eid = "dist.norm.diff"
    return [
        _row(eid, "d_uni of unitarily equivalent pair", 0.0, d_uni_hermitian(R1, R2), 1e-12),
        _row(eid, "|R1 - R2|", 1 / math.sqrt(2), operator_norm(R1 - R2), 1e-12),
        _row(eid, "d_iso upper bound", 0.0, d_iso_upper(R1, R2).value, 1e-12),
    ]


def _norm_diff_scalar():
    eid = "dist.norm.diff'"
    r1, r2 = 1.0, -0.5
    que = d_que_upper([[r1]], [[r2]]).value
    iso = d_iso_upper([[r1]], [[r2]]).value
    return [
        _row(eid, "d_que of r1=1, r2=-1/2", d_que_scalar(r1, r2), que, 1e-9),
        _row(eid, "d_iso of r1=1, r2=-1/2", 1.0, iso, 1e-9),
        _row(eid, "d_uni of r1=1, r2=-1/2", 1.5, d_uni_hermitian([[r1]], [[r2]]), 1e-12),
    ]


def _counterex():
    eid = "duni.eq.diso.counterex"
    a1 = Cmf.make(essential=[(1, 2)])
    a2 = Cmf.make(essential=[(-2, 1)])
    k = 65
    R1 = np.diag(np.linspace(1, 2, k))
    R2 = np.diag(np.linspace(-2, 1, k))
    pair = EmbeddingPair(zero_extension(k, 2 * k, 0), zero_extension(k, 2 * k, k))
    return [
        _row(eid, "Hausdorff distance of [1,2] and [-2,1]", 3.0,
             hausdorff(a1.essential, a2.essential), 0.0),
        _row(eid, "d_uni of the Cmfs", 3.0, d_uni_cmf(a1, a2), 0.0),
        _row(eid, "|D| of orthogonal zero extensions (sampled spectra)", 2.0,
             operator_norm(difference_operator(pair, R1, R2)), 1e-12, "le"),
        _row(eid, "Lévy-Prokhorov after embedding [1,2]", 2.0,
             lp_delta(embedded_cmf(a1, INF), a2), 0.0, "le"),
    ]


def _counterex_scalar():
    eid = "duni.eq.diso.counterex'"
    r1, r2 = 11.0, -10.0
    return [
        _row(eid, "d_iso, r1 = 11, r2 = -10", 11.0, d_iso_upper([[r1]], [[r2]]).value, 1e-9),
        _row(eid, "d_uni - d_iso = |r2|", 10.0,
             d_uni_hermitian([[r1]], [[r2]]) - d_iso_scalar(r1, r2), 1e-12),
    ]


def _zero_not_uni():
    eid = "diso.0.duni.not"
    a1 = Cmf.make(essential=[(1, 2)])
    a2 = Cmf.make(essential=[(0, 0), (1, 2)])
    e1 = embedded_cmf(a1, INF)
    return [
        _row(eid, "d_uni of [1,2] and {0} u [1,2]", 1.0, d_uni_cmf(a1, a2), 0.0),
        _row(eid, "embedded Cmfs coincide", 1.0, float(e1 == a2), 0.0),
        _row(eid, "d_uni after embedding", 0.0, d_uni_cmf(e1, a2), 0.0),
    ]


def _dhaus():
    eid = "diso.dhaus"
    R1 = np.diag([-1.0, -2.0])
    R2 = np.diag([-1.0, -2.0, 100.0])
    pair = EmbeddingPair(zero_extension(2, 3, 0), np.eye(3))
    s1 = Cmf.make({-1: 1, -2: 1})
    s2 = Cmf.make({-1: 1, -2: 1, 100: 1})
    return [
        _row(eid, "Hausdorff distance of spectra", 101.0,
             hausdorff(supports(s1)[2], supports(s2)[2]), 0.0),
        _row(eid, "|D| for the zero extension", 100.0,
             operator_norm(difference_operator(pair, R1, R2)), 1e-12),
        _row(eid, "d_iso upper bound", 100.0, d_iso_upper(R1, R2).value, 1e-12, "le"),
    ]


def _dque_zero():
    eid = "dque.zero"
    R = np.diag([3.0, 1.0])
    Z = np.zeros((2, 2))
    return [
        _row(eid, "closed form |R|/sqrt2 for diag(3,1)", 3 / math.sqrt(2), d_que_to_zero(R), 1e-12),
        _row(eid, "searched d_que upper bound", 3 / math.sqrt(2), d_que_upper(R, Z).value, 1e-9),
        _row(eid, "closed form for the identity", 1 / math.sqrt(2), d_que_to_zero(np.eye(2)), 1e-12),
    ]


def _mult_id():
    eid = "diso.mult.id"
    return [
        _row(eid, "d_iso(1, -1)", 1.0, d_iso_scalar(1, -1), 0.0),
        _row(eid, "searched d_iso(1, -1)", 1.0, d_iso_upper([[1.0]], [[-1.0]]).value, 1e-9),
        _row(eid, "d_iso(3, 1)", 2.0, d_iso_scalar(3, 1), 0.0),
    ]


def _dque_mult():
    eid = "dque.mult.id"
    return [
        _row(eid, "d_que(1, 0)", 1 / math.sqrt(2), d_que_scalar(1, 0), 1e-15),
        _row(eid, "d_que(1, -1)", 2 / math.sqrt(5), d_que_scalar(1, -1), 1e-15),
        _row(eid, "searched d_que(1, -1)", 2 / math.sqrt(5),
             d_que_upper([[1.0]], [[-1.0]]).value, 1e-9),
    ]


def _sqrt2():
    eid = "at.least.sqrt2"
    return [_row(eid, "d_iso(1,0) / d_que(1,0)", math.sqrt(2),
                 d_iso_scalar(1, 0) / d_que_scalar(1, 0), 1e-12)]


def _pointwise():
    eid = "pointwise"
    a1 = Cmf.make({2: 2, 4: 2})
    a2 = Cmf.make({1: 1, 3: 1, 5: 1, 6: 1})
    return [
        _row(eid, "acute delta = lambda0 - 4 with lambda0 = 6", 2.0, acute_delta(a1, a2), 0.0),
        _row(eid, "pointwise radius", 1.0, pointwise_radius(a1, a2), 0.0),
    ]


EXAMPLES = {
    "dist.norm.diff": ("same space, unitarily equivalent, norm difference 1/sqrt2", _norm_diff),
    "dist.norm.diff'": ("multiples of the identity in one space", _norm_diff_scalar),
    "duni.eq.diso.counterex": ("multiplication operators on [1,2] and [-2,1]", _counterex),
    "duni.eq.diso.counterex'": ("gap d_uni - d_iso can be large", _counterex_scalar),
    "diso.0.duni.not": ("isometric distance 0, unitary distance 1", _zero_not_uni),
    "diso.dhaus": ("isometric distance below the spectral Hausdorff distance", _dhaus),
    "dque.zero": ("quasi-unitary distance to the zero operator", _dque_zero),
    "diso.mult.id": ("isometric distance of multiples of the identity", _mult_id),
    "dque.mult.id": ("quasi-unitary distance of multiples of the identity", _dque_mult),
    "at.least.sqrt2": ("ratio witness for the constant between d_iso and d_que", _sqrt2),
    "pointwise": ("pointwise radius strictly below the Lévy-Prokhorov quantity", _pointwise),
}


def example_names() -> list:
    return list(EXAMPLES)


def run_example(name: str) -> list:
    """Rows for one example or for ``"all"``; KeyError for unknown names."""
    if name == "all":
        return [r for n in EXAMPLES for r in run_example(n)]
    if name not in EXAMPLES:
        raise KeyError(name)
    return EXAMPLES[name][1]()
