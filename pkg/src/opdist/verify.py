"""Randomised property batteries behind ``opdist verify``.

Every property draws its instances from its own seeded generator so that
results do not depend on which properties run. A property reports how
many instances passed and the worst slack (``rhs - lhs`` of the checked
inequality, or minus the gap of an equality).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import random_ops as rnd
from .cmf import cmf_from_hermitian, supports
from .cmf_distances import d_disc, delta_fin, hausdorff, lp_delta
from .convergence import OperatorSequence, equivalence_check
from .embeddings import (
    EmbeddingPair,
    decompose_D,
    difference_operator,
    glue_embeddings,
    nagy_embedding,
    two_projection_norm,
)
from .errors import ConsistencyError
from .io import cmf_to_json, operator_to_json
from .linalg_core import _norm2
from .op_distances import SQRT3, d_iso_scalar, d_que_scalar, d_uni_hermitian, delta_J

__all__ = ["RunConfig", "PropertyResult", "PROPERTIES", "run_battery"]


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    batch: int = 200
    max_dim: int = 8
    tol: float = 1e-9
    perturb_nagy: bool = False


@dataclass
class PropertyResult:
    name: str
    total: int = 0
    passed: int = 0
    worst_slack: float = math.inf
    failures: list = field(default_factory=list)

    def record(self, slack: float, tol: float, instance) -> None:
        self.total += 1
        self.worst_slack = min(self.worst_slack, slack)
        if slack >= -tol:
            self.passed += 1
        elif len(self.failures) < 3:
            self.failures.append({"index": self.total - 1, "slack": slack,
                                  "instance": instance()})

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_dict(self) -> dict:
        return {"name": self.name, "total": self.total, "passed": self.passed,
                "worst_slack": self.worst_slack if self.total else None,
                "failures": self.failures}


def _dim(rng, cfg, low=1):
    return int(rng.integers(low, cfg.max_dim + 1))


def _perturbed_nagy(J):
    """Deliberately wrong factorisation: ``iota1`` has its columns in
    reversed order, so it is still an isometry but ``iota2^* iota1 = J P``
    for the reversal permutation ``P``."""
    pair = nagy_embedding(J)
    return EmbeddingPair(pair.iota1[:, ::-1], pair.iota2)


def _ops(**mats):
    return {k: operator_to_json(v) for k, v in mats.items()}


def p_azoff_davis(rng, cfg, res):
    for _ in range(cfg.batch):
        n = _dim(rng, cfg)
        A, B = rnd.hermitian(rng, n), rnd.hermitian(rng, n)
        du = d_uni_hermitian(A, B, check=False)
        lp = lp_delta(cmf_from_hermitian(A), cmf_from_hermitian(B))
        res.record(-abs(du - lp), cfg.tol, lambda: _ops(R1=A, R2=B))


def p_spectral_domination(rng, cfg, res):
    for k in range(2 * cfg.batch):
        n = _dim(rng, cfg)
        A, B = rnd.hermitian(rng, n), rnd.hermitian(rng, n)
        s1 = cmf_from_hermitian(A)
        s2 = cmf_from_hermitian(B)
        dh = hausdorff(supports(s1)[2], supports(s2)[2])
        rhs = d_uni_hermitian(A, B, check=False) if k < cfg.batch else _norm2(A - B)
        res.record(rhs - dh, cfg.tol, lambda: _ops(R1=A, R2=B))


def p_nagy_bound(rng, cfg, res):
    for k in range(cfg.batch):
        n1, n2 = _dim(rng, cfg), _dim(rng, cfg)
        A = rnd.complex_matrix(rng, n1)
        if k % 2:
            # nearly intertwined: delta_J is small and the bound is tight
            n2 = max(n1, n2)
            J = rnd.isometry(rng, n2, n1)
            B = J @ A @ J.conj().T + 1e-3 * rnd.complex_matrix(rng, n2)
        else:
            B = rnd.complex_matrix(rng, n2)
            J = rnd.contraction(rng, n2, n1)
        pair = _perturbed_nagy(J) if cfg.perturb_nagy else nagy_embedding(J)
        lhs = _norm2(difference_operator(pair, A, B))
        res.record(SQRT3 * delta_J(A, B, J) - lhs, cfg.tol,
                   lambda: {**_ops(R1=A, R2=B), "J": operator_to_json(J)})


def _random_pair(rng, cfg):
    n1, n2 = _dim(rng, cfg), _dim(rng, cfg)
    N = max(n1, n2) + int(rng.integers(0, cfg.max_dim + 1))
    return EmbeddingPair(rnd.isometry(rng, N, n1), rnd.isometry(rng, N, n2)), n1, n2


def p_embedding_bound(rng, cfg, res):
    for _ in range(cfg.batch):
        pair, n1, n2 = _random_pair(rng, cfg)
        A, B = rnd.complex_matrix(rng, n1), rnd.complex_matrix(rng, n2)
        rhs = _norm2(difference_operator(pair, A, B))
        lhs = delta_J(A, B, pair.J)
        res.record(rhs - lhs, cfg.tol, lambda: {
            **_ops(R1=A, R2=B), "iota1": operator_to_json(pair.iota1),
            "iota2": operator_to_json(pair.iota2)})


def p_norm_identities(rng, cfg, res):
    for _ in range(cfg.batch):
        pair, n1, n2 = _random_pair(rng, cfg)
        A, B = rnd.complex_matrix(rng, n1), rnd.complex_matrix(rng, n2)
        try:
            dec = decompose_D(pair, A, B, tol=cfg.tol)
            worst = -max(abs(l - r) for l, r in dec.identities.values())
        except ConsistencyError:
            worst = -math.inf
        res.record(worst, cfg.tol, lambda: _ops(R1=A, R2=B))


def p_lp_decomposition(rng, cfg, res):
    for _ in range(cfg.batch):
        a, b = rnd.random_cmf(rng), rnd.random_cmf(rng)
        lp = lp_delta(a, b)
        rhs = max(hausdorff(a.essential, b.essential), delta_fin(a, b))
        dd = d_disc(a, b)
        gap = 0.0 if (lp == rhs and dd == delta_fin(a, b)) else -math.inf
        res.record(gap, cfg.tol, lambda: {"a1": cmf_to_json(a), "a2": cmf_to_json(b)})


def p_lp_triangle(rng, cfg, res):
    for _ in range(cfg.batch):
        a, b, c = (rnd.random_cmf(rng) for _ in range(3))
        lhs = lp_delta(a, c)
        rhs = lp_delta(a, b) + lp_delta(b, c)
        slack = 0.0 if math.isinf(rhs) else rhs - lhs
        res.record(slack, cfg.tol, lambda: {"a1": cmf_to_json(a), "a2": cmf_to_json(b),
                                             "a3": cmf_to_json(c)})


def _scalar(rng):
    return complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) if rng.random() < 0.5 \
        else complex(rng.uniform(-2, 2))


def p_que_scalar_triangle(rng, cfg, res):
    for _ in range(cfg.batch):
        r = [_scalar(rng) for _ in range(3)]
        lhs = d_que_scalar(r[0], r[2])
        rhs = d_que_scalar(r[0], r[1]) + d_que_scalar(r[1], r[2])
        res.record(rhs - lhs, cfg.tol, lambda: {"r": [[z.real, z.imag] for z in r]})


def p_glue_triangle(rng, cfg, res):
    N = 2
    for _ in range(cfg.batch):
        r = [complex(rng.uniform(-2, 2)) for _ in range(3)]
        p12 = EmbeddingPair(rnd.isometry(rng, N, 1), rnd.isometry(rng, N, 1))
        p23 = EmbeddingPair(rnd.isometry(rng, N, 1), rnd.isometry(rng, N, 1))
        glued = glue_embeddings(p12, p23)
        R = [np.array([[x]]) for x in r]
        lhs = _norm2(difference_operator(glued, R[0], R[2]))
        rhs = (_norm2(difference_operator(p12, R[0], R[1]))
               + _norm2(difference_operator(p23, R[1], R[2])))
        res.record(rhs - lhs, cfg.tol, lambda: {"r": [z.real for z in r]})


def p_convergence(rng, cfg, res):
    for _ in range(max(1, cfg.batch // 10)):
        n = _dim(rng, cfg)
        L = rnd.hermitian(rng, n)
        items = [L + rnd.hermitian(rng, n) / k for k in range(1, 11)]
        Js = [rnd.unitary(rng, n) if rng.random() < 0.5 else np.eye(n) for _ in items]
        items = [J.conj().T @ (J @ R @ J.conj().T) @ J for R, J in zip(items, Js)]
        rep = equivalence_check(OperatorSequence(items, L, Js))
        slack = min(rep.verdicts["weidmann <= 3 que"]["slack"],
                    rep.verdicts["delta_J <= weidmann"]["slack"])
        res.record(slack, cfg.tol, lambda: {"limit": operator_to_json(L)})


def p_two_projections(rng, cfg, res):
    for _ in range(cfg.batch):
        N = _dim(rng, cfg, low=2)
        k1, k2 = int(rng.integers(1, N + 1)), int(rng.integers(1, N + 1))
        Q1, Q2 = rnd.isometry(rng, N, k1), rnd.isometry(rng, N, k2)
        P1, P2 = Q1 @ Q1.conj().T, Q2 @ Q2.conj().T
        r1, r2 = rng.uniform(-2, 2), rng.uniform(-2, 2)
        try:
            val = two_projection_norm(r1, r2, P1, P2)
            slack = val - d_iso_scalar(r1, r2)
        except ConsistencyError:
            slack = -math.inf
        res.record(slack, cfg.tol, lambda: {"r": [r1, r2], "N": N})


PROPERTIES = {
    "azoff_davis": p_azoff_davis,
    "spectral_domination": p_spectral_domination,
    "nagy_bound": p_nagy_bound,
    "embedding_bound": p_embedding_bound,
    "norm_identities": p_norm_identities,
    "lp_decomposition": p_lp_decomposition,
    "lp_triangle": p_lp_triangle,
    "que_scalar_triangle": p_que_scalar_triangle,
    "glue_triangle": p_glue_triangle,
    "convergence": p_convergence,
    "two_projections": p_two_projections,
}


def run_battery(cfg: RunConfig, only=None) -> list:
    """Run the selected properties (all by default) in a fixed order."""
    if cfg.batch <= 0:
        warnings.warn("batch size 0: nothing to verify", stacklevel=2)
    out = []
    for idx, (name, fn) in enumerate(PROPERTIES.items()):
        if only and name not in only:
            continue
        res = PropertyResult(name)
        if cfg.batch > 0:
            fn(np.random.default_rng([cfg.seed, idx]), cfg, res)
        out.append(res)
    return out
