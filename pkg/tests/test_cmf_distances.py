import math

import numpy as np
import pytest

import oracles
from opdist import random_ops as rnd
from opdist.cmf import INF, Cmf, RealSet
from opdist.cmf_distances import (
    acute_delta,
    acute_delta_fin,
    candidate_eps,
    d_disc,
    d_spec,
    delta_fin,
    haus_supports,
    hausdorff,
    lp_delta,
    one_sided_hausdorff,
    pointwise_radius,
)

# (alpha1, alpha2, acute12, acute21, fin12, fin21); values frozen from the
# brute-force oracles in tests/oracles.py (scan values rounded off ETA)
FROZEN = [
    (Cmf.make({0: 2}), Cmf.make({0: 1, 1: 1}), 1.0, 1.0, 1.0, 1.0),
    (Cmf.make(essential=[(1, 2)]), Cmf.make(essential=[(-2, 1)]), 1.0, 3.0, 0.0, 0.0),
    (Cmf.make({0: 1}, [(3, 4)]), Cmf.make({0.5: 1}, [(3.5, 5)]), 0.5, 1.0, 0.5, 0.5),
    (Cmf.make({0: 1, 1: 1, 2: 1}), Cmf.make({1: 3}), 1.0, 1.0, 1.0, 1.0),
    (Cmf.make({-1: 1, 1: 1}), Cmf.make(essential=[(0, 0)]), 1.0, INF, 1.0, 0.0),
]


def test_hausdorff_known():
    A = RealSet(((0, 1),))
    B = RealSet(((0, 0), (1, 1)))
    assert one_sided_hausdorff(A, B) == 0.5
    assert one_sided_hausdorff(B, A) == 0.0
    assert hausdorff(A, B) == 0.5
    assert hausdorff(RealSet(), RealSet()) == 0.0
    assert hausdorff(A, RealSet()) == INF
    assert hausdorff(RealSet(((1, 2),)), RealSet(((-2, 1),))) == 3.0


def test_hausdorff_against_sampling():
    rng = np.random.default_rng(11)
    for _ in range(100):
        a, b = rnd.random_cmf(rng), rnd.random_cmf(rng)
        A = RealSet.normalized(list(a.essential) + [(p, p) for p in a.points])
        B = RealSet.normalized(list(b.essential) + [(p, p) for p in b.points])
        assert hausdorff(A, B) == pytest.approx(oracles.hausdorff_sampled(list(A), list(B)),
                                                abs=1e-12)


@pytest.mark.parametrize("a1,a2,ac12,ac21,f12,f21", FROZEN)
def test_frozen_values(a1, a2, ac12, ac21, f12, f21):
    assert acute_delta(a1, a2) == ac12
    assert acute_delta(a2, a1) == ac21
    assert acute_delta_fin(a1, a2) == f12
    assert acute_delta_fin(a2, a1) == f21
    assert lp_delta(a1, a2) == max(ac12, ac21)


def test_acute_matches_scan_oracle():
    rng = np.random.default_rng(12)
    for _ in range(150):
        a, b = rnd.random_cmf(rng), rnd.random_cmf(rng)
        got, ref = acute_delta(a, b), oracles.acute_scan(a, b)
        if math.isinf(ref):
            assert math.isinf(got)
        else:
            assert got == pytest.approx(ref, abs=1e-8)


def test_finite_part_three_routes_agree():
    rng = np.random.default_rng(13)
    for _ in range(150):
        a, b = rnd.random_cmf(rng), rnd.random_cmf(rng)
        ref = oracles.fin_subsets(a, b)
        assert acute_delta_fin(a, b) == ref
        assert max(ref, oracles.fin_subsets(b, a)) == delta_fin(a, b) == d_disc(a, b)


def test_decomposition_exact():
    rng = np.random.default_rng(14)
    for _ in range(200):
        a, b = rnd.random_cmf(rng), rnd.random_cmf(rng)
        assert lp_delta(a, b) == max(hausdorff(a.essential, b.essential), delta_fin(a, b))


def test_counterexample_pair():
    a1, a2 = Cmf.make(essential=[(1, 2)]), Cmf.make(essential=[(-2, 1)])
    assert pointwise_radius(a1, a2) == 1.0
    assert lp_delta(a1, a2) == 3.0
    assert d_spec(a1, a2) == 3.0


def test_pointwise_radius_strictly_below():
    a1 = Cmf.make({2: 2, 4: 2})
    a2 = Cmf.make({1: 1, 3: 1, 5: 1, 6: 1})
    assert pointwise_radius(a1, a2) == 1.0
    assert acute_delta(a1, a2) == 2.0
    assert acute_delta(a2, a1) == 2.0
    assert oracles.acute_scan(a2, a1) == pytest.approx(2.0, abs=1e-8)


def test_pointwise_radius_never_exceeds_acute():
    rng = np.random.default_rng(15)
    for _ in range(200):
        a, b = rnd.random_cmf(rng), rnd.random_cmf(rng)
        assert pointwise_radius(a, b) <= acute_delta(a, b)
        if a.is_purely_essential:
            assert pointwise_radius(a, b) == acute_delta(a, b)


def test_symmetry_and_identity():
    rng = np.random.default_rng(16)
    for _ in range(100):
        a, b = rnd.random_cmf(rng), rnd.random_cmf(rng)
        assert lp_delta(a, b) == lp_delta(b, a)
        assert lp_delta(a, a) == 0.0
        assert d_spec(a, a) == 0.0


def test_d_spec_totals_must_match_for_finite_value():
    a = Cmf.make({-1: 1, -2: 1})
    b = Cmf.make({-1: 1, -2: 1, 100: 1})
    assert d_spec(a, b) == INF
    assert haus_supports(a, b)["full"] == 101.0


def test_empty_conventions():
    e = Cmf()
    a = Cmf.make({0: 1})
    assert acute_delta(e, a) == 0.0
    assert acute_delta(a, e) == INF
    assert lp_delta(e, e) == 0.0


def test_candidate_eps_contains_half_gaps():
    a = Cmf.make({0: 1, 2: 1})
    b = Cmf.make({0: 2})
    c = candidate_eps(a, b)
    assert 1.0 in c and 2.0 in c and 0.0 in c
    assert np.all(np.diff(c) > 0)
