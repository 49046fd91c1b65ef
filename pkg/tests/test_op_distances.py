import math

import numpy as np
import pytest

from opdist import random_ops as rnd
from opdist.cmf import Cmf, cmf_from_hermitian
from opdist.embeddings import difference_operator, zero_extension
from opdist.errors import ContractionError, ShapeError, SymmetryError
from opdist.linalg_core import operator_norm
from opdist.op_distances import (
    SQRT3,
    SearchConfig,
    d_iso_bracket_cmf,
    d_iso_lower,
    d_iso_scalar,
    d_iso_upper,
    d_que_lower,
    d_que_scalar,
    d_que_to_zero,
    d_que_upper,
    d_uni_cmf,
    d_uni_hermitian,
    delta_J,
    delta_J_grad,
    delta_J_terms,
    eigen_aligned_pair,
    inequality_report,
    scalar_multiple,
)
from opdist.cmf_distances import lp_delta

import oracles

FAST = SearchConfig(restarts=2, steps=150)


# ------------------------------------------------------------- delta_J


def test_delta_J_examples():
    R = np.diag([1.0, 2.0])
    assert delta_J(R, R, np.eye(2)) == 0.0
    assert delta_J([[1.0]], [[0.0]], [[1 / math.sqrt(2)]]) == pytest.approx(1 / math.sqrt(2))
    D1, D2 = np.diag([-1.0, -2.0]), np.diag([-1.0, -2.0, 100.0])
    J = zero_extension(2, 3)  # iota2^* iota1 with iota2 = id
    assert delta_J(D1, D2, J) == 100.0
    with pytest.raises(ContractionError):
        delta_J([[1.0]], [[1.0]], [[2.0]])
    with pytest.raises(ShapeError):
        delta_J(np.eye(2), np.eye(3), np.eye(2))


def test_defect_terms_match_literal_form():
    rng = np.random.default_rng(31)
    for _ in range(30):
        n1, n2 = (int(x) for x in rng.integers(1, 6, 2))
        A, B = rnd.complex_matrix(rng, n1), rnd.complex_matrix(rng, n2)
        J = rnd.contraction(rng, n2, n1)
        t = delta_J_terms(A, B, J)
        lit1 = operator_norm(A.conj().T @ (np.eye(n1) - J.conj().T @ J) @ A) ** 0.5
        lit2 = operator_norm(B.conj().T @ (np.eye(n2) - J @ J.conj().T) @ B) ** 0.5
        assert t[0] == pytest.approx(lit1, rel=1e-9, abs=1e-12)
        assert t[1] == pytest.approx(lit2, rel=1e-9, abs=1e-12)


def test_swap_symmetry_pointwise():
    rng = np.random.default_rng(32)
    for _ in range(50):
        n1, n2 = (int(x) for x in rng.integers(1, 6, 2))
        A, B = rnd.complex_matrix(rng, n1), rnd.complex_matrix(rng, n2)
        J = rnd.contraction(rng, n2, n1)
        assert delta_J(A, B, J) == pytest.approx(delta_J(B, A, J.conj().T), abs=1e-12)


def test_adjoint_invariance_for_normal_operators():
    rng = np.random.default_rng(33)
    for _ in range(50):
        n1, n2 = (int(x) for x in rng.integers(1, 6, 2))
        U1, U2 = rnd.unitary(rng, n1), rnd.unitary(rng, n2)
        A = U1 @ np.diag(rnd.complex_matrix(rng, n1, 1)[:, 0]) @ U1.conj().T
        B = U2 @ np.diag(rnd.complex_matrix(rng, n2, 1)[:, 0]) @ U2.conj().T
        J = rnd.contraction(rng, n2, n1)
        assert delta_J(A, B, J) == pytest.approx(delta_J(A.conj().T, B.conj().T, J), abs=1e-12)


def test_adjoint_invariance_fails_for_nilpotent():
    # the defect terms see R and R^* differently
    N = np.array([[0.0, 1.0], [0.0, 0.0]])
    J = np.diag([1.0, 0.0])
    assert delta_J_terms(N, N, J)[:2] == (0.0, 0.0)
    assert delta_J_terms(N.T, N.T, J)[:2] == (1.0, 1.0)


@pytest.mark.parametrize("seed", range(12))
def test_gradient_matches_finite_differences(seed):
    rng = np.random.default_rng(100 + seed)
    n1, n2 = (int(x) for x in rng.integers(1, 5, 2))
    A, B = rnd.complex_matrix(rng, n1), rnd.complex_matrix(rng, n2)
    J = 0.8 * rnd.contraction(rng, n2, n1)
    val, G = delta_J_grad(A, B, J)
    assert val == pytest.approx(delta_J(A, B, J), abs=1e-12)
    E = rnd.complex_matrix(rng, n2, n1)
    h = 1e-6
    fd = (delta_J(A, B, J + h * E) - delta_J(A, B, J - h * E)) / (2 * h)
    assert fd == pytest.approx(np.real(np.vdot(G, E)), rel=1e-4, abs=1e-6)


def test_near_zero_rigidity():
    rng = np.random.default_rng(34)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        A = rnd.hermitian(rng, n) + 3 * np.eye(n)
        U = rnd.unitary(rng, n)
        J = U @ np.diag(rng.uniform(0.95, 1.0, n))
        B = U @ A @ U.conj().T + 1e-3 * rnd.hermitian(rng, n)
        eps = delta_J(A, B, J)
        bound = eps ** 2 * operator_norm(np.linalg.inv(A)) ** 2
        assert operator_norm(J.conj().T @ J - np.eye(n)) <= bound + 1e-12


# -------------------------------------------------------- closed forms


def test_d_uni_hermitian_examples():
    assert d_uni_hermitian(np.diag([1.0, 2.0]), 0.5 * np.array([[3.0, 1.0], [1.0, 3.0]])) \
        == pytest.approx(0.0, abs=1e-15)
    assert d_uni_hermitian(np.diag([1.0, 2.0]), np.diag([1.0, 2.0, 100.0])) == math.inf
    assert d_uni_hermitian(np.diag([1.0, 2.0]), np.diag([1.0, 3.0])) == 1.0
    with pytest.raises(SymmetryError):
        d_uni_hermitian([[0.0, 1.0], [0.0, 0.0]], np.eye(2))


def test_d_uni_against_permutation_oracle():
    rng = np.random.default_rng(35)
    for _ in range(60):
        n = int(rng.integers(1, 6))
        A, B = rnd.hermitian(rng, n), rnd.hermitian(rng, n)
        ref = oracles.d_uni_permutations(np.linalg.eigvalsh(A), np.linalg.eigvalsh(B))
        assert d_uni_hermitian(A, B) == pytest.approx(ref, abs=1e-12)


def test_d_uni_cmf():
    assert d_uni_cmf(Cmf.make(essential=[(1, 2)]), Cmf.make(essential=[(-2, 1)])) == 3.0
    assert d_uni_cmf(Cmf.make(essential=[(1, 2)]), Cmf.make(essential=[(0, 0), (1, 2)])) == 1.0
    a = Cmf.make({0: 1, 1: 2})
    assert d_uni_cmf(a, a) == 0.0
    assert d_uni_cmf(a, Cmf.make({0: 1})) == math.inf
    assert d_uni_cmf(a, Cmf.make(essential=[(0, 1)])) == math.inf


def test_scalar_closed_forms():
    assert d_iso_scalar(1, -1) == 1
    assert d_iso_scalar(1, 1) == 0
    assert d_iso_scalar(3, 1) == 2
    assert d_que_scalar(1, 0) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert d_que_scalar(1, -1) == pytest.approx(2 / math.sqrt(5), abs=1e-15)
    assert d_que_scalar(0.7, 0.7) == 0.0
    assert d_que_to_zero(np.eye(2)) == pytest.approx(1 / math.sqrt(2))
    assert d_que_to_zero(np.zeros((2, 2))) == 0.0
    assert d_que_to_zero(np.diag([3.0, 1.0])) == pytest.approx(3 / math.sqrt(2))
    assert scalar_multiple(2 * np.eye(3)) == 2
    assert scalar_multiple(np.diag([1.0, 2.0])) is None


def test_que_scalar_is_a_metric():
    rng = np.random.default_rng(36)
    for _ in range(500):
        a, b, c = (complex(*rng.uniform(-2, 2, 2)) for _ in range(3))
        assert d_que_scalar(a, c) <= d_que_scalar(a, b) + d_que_scalar(b, c) + 1e-12
        assert d_que_scalar(a, b) == pytest.approx(d_que_scalar(b, a))


# ------------------------------------------------------------- searches


def test_d_iso_upper_examples():
    r = d_iso_upper([[1.0]], [[-1.0]])
    assert r.value <= 1 + 1e-4 and r.value == pytest.approx(1.0, abs=1e-9)
    assert r.certified
    D1, D2 = np.diag([-1.0, -2.0]), np.diag([-1.0, -2.0, 100.0])
    assert d_iso_upper(D1, D2).value <= 100 + 1e-12
    R = np.diag([1.0, 2.0])
    assert d_iso_upper(R, R).value == 0.0


def test_d_que_upper_examples():
    assert d_que_upper([[1.0]], [[0.0]]).value <= 1 / math.sqrt(2) + 1e-6
    assert d_que_upper([[1.0]], [[-1.0]]).value <= 2 / math.sqrt(5) + 1e-6
    R = rnd.hermitian(np.random.default_rng(0), 3)
    assert d_que_upper(R, R).value == 0.0


def test_witnesses_realise_values():
    rng = np.random.default_rng(37)
    for _ in range(6):
        n1, n2 = (int(x) for x in rng.integers(1, 4, 2))
        A, B = rnd.hermitian(rng, n1), rnd.hermitian(rng, n2)
        iso = d_iso_upper(A, B, FAST)
        assert operator_norm(difference_operator(iso.witness, A, B)) == pytest.approx(iso.value)
        que = d_que_upper(A, B, FAST)
        assert delta_J(A, B, que.witness) == pytest.approx(que.value)
        assert iso.lower <= iso.value + 1e-12 and que.lower <= que.value + 1e-12


def test_search_is_deterministic():
    rng = np.random.default_rng(38)
    A, B = rnd.complex_matrix(rng, 3), rnd.complex_matrix(rng, 2)
    assert d_iso_upper(A, B, FAST).value == d_iso_upper(A, B, FAST).value
    assert d_que_upper(A, B, FAST).value == d_que_upper(A, B, FAST).value


def test_lower_bounds():
    assert d_iso_lower([[1.0]], [[0.0]]) == 1.0
    assert d_iso_lower([[3.0]], [[1.0]]) == 2.0
    assert d_que_lower([[1.0]], [[0.0]]) == pytest.approx(1 / math.sqrt(2))
    # zero-adjoined Hausdorff bound for the dhaus pair: spectra {-1,-2} vs {-1,-2,100}
    assert d_iso_lower(np.diag([-1.0, -2.0]), np.diag([-1.0, -2.0, 100.0])) == 100.0


def test_eigen_aligned_pair_is_bottleneck():
    A, B = np.diag([0.0, 5.0]), np.diag([0.2, 4.0, 9.0])
    pair, value = eigen_aligned_pair(A, B, 5)
    assert value == pytest.approx(operator_norm(difference_operator(pair, A, B)))
    # 9 has to meet 5 or a zero slot; 9-5 and 4-0 give the bottleneck 4
    assert value == pytest.approx(4.0)


def test_weak_triangle_for_searched_que():
    rng = np.random.default_rng(39)
    for _ in range(8):
        dims = [int(x) for x in rng.integers(1, 3, 3)]
        R = [rnd.hermitian(rng, n) for n in dims]
        d13 = d_que_upper(R[0], R[2], FAST).value
        d12 = d_que_upper(R[0], R[1], FAST).value
        d23 = d_que_upper(R[1], R[2], FAST).value
        assert d13 <= SQRT3 * (d12 + d23) + 1e-9


def test_iso_bracket_cmf():
    lo, up = d_iso_bracket_cmf(Cmf.make(essential=[(1, 2)]), Cmf.make(essential=[(0, 0), (1, 2)]))
    assert (lo, up) == (0.0, 0.0)
    a1, a2 = Cmf.make(essential=[(1, 2)]), Cmf.make(essential=[(-2, 1)])
    lo, up = d_iso_bracket_cmf(a1, a2)
    assert lo <= up <= 2.0


# --------------------------------------------------------------- report


def test_report_norm_diff_pair():
    R1 = np.diag([1.0, 2.0])
    R2 = 0.5 * np.array([[3.0, 1.0], [1.0, 3.0]])
    rep = inequality_report(R1, R2, FAST)
    assert rep.ok
    assert rep.d_uni == pytest.approx(0.0, abs=1e-15)
    assert rep.norm_diff == pytest.approx(1 / math.sqrt(2))
    assert rep.verdict("d_haus <= |R1 - R2|").slack == pytest.approx(1 / math.sqrt(2))


def test_report_dhaus_pair():
    rep = inequality_report(np.diag([-1.0, -2.0]), np.diag([-1.0, -2.0, 100.0]), FAST)
    assert rep.ok
    assert rep.d_haus_spec == 101.0
    assert rep.d_iso_upper <= 100.0
    v = rep.verdict("d_haus <= d_iso")
    assert v.status == "not-applicable" and "hypothesis unmet" in v.note
    assert v.slack < 0   # the unconditional form really fails here


def test_report_identical_operators():
    R = np.diag([1.0, -1.0, 0.5])
    rep = inequality_report(R, R, FAST)
    for k in ("d_haus_spec", "d_spec", "d_uni", "d_iso_upper", "d_que_upper", "norm_diff"):
        assert getattr(rep, k) == 0.0
    assert all(v.slack == 0.0 for v in rep.chain_verdicts if v.status == "pass")


def test_report_matches_cmf_route():
    rng = np.random.default_rng(40)
    A, B = rnd.hermitian(rng, 3), rnd.hermitian(rng, 3)
    rep = inequality_report(A, B, FAST)
    assert rep.d_uni == pytest.approx(lp_delta(cmf_from_hermitian(A), cmf_from_hermitian(B)))
    crep = inequality_report(Cmf.make(essential=[(1, 2)]), Cmf.make(essential=[(0, 0), (1, 2)]))
    assert crep.kind == "cmf" and crep.d_uni == 1.0 and crep.ok
