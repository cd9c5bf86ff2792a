import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reptile.angles import AnglePi, ExactAngle
from reptile.exactfield import QuadVal, qv, sqrt_of
from reptile.filters import (
    CoverQuery,
    CoverSolution,
    FilterOptions,
    a_grid,
    adjacency_excluded,
    cii_check,
    cover_solutions,
    gt2_cases,
    gt_membership,
    gtl_feasible,
    gtl_refutes_all_mu,
    mtm_certificate,
    reptile_refuted,
    rii_check,
    ssts_certificate,
    strict_mtm_certificate,
    sts_certificate,
    verdict,
)
from reptile.trapezoid import make_general, make_isosceles, make_right
from cover_oracle import brute_covers

F = Fraction
R = lambda a: make_right(AnglePi(1, 3), a)
H3 = QuadVal(0, F(1, 2), 3)
S2 = QuadVal(0, F(1, 2), 2)


def sols(T, L, **kw):
    return [(c.p, c.q, c.r, c.s) for c in cover_solutions(CoverQuery(T, L, **kw))]


def test_cover_examples():
    T = R(F(1, 8))
    assert sols(T, qv(1)) == [(0, 0, 1, 0), (3, 1, 0, 0), (8, 0, 0, 0)]
    assert sols(T, H3) == [(0, 0, 0, 1)]
    assert sols(T, sqrt_of(3)) == [(0, 0, 0, 2)]


def test_cover_side_constraints():
    T = R(F(1, 8))
    assert sols(T, qv(1), require_q_zero=True) == [(0, 0, 1, 0), (8, 0, 0, 0)]
    assert sols(T, qv(1), require_p_q_zero=True) == [(0, 0, 1, 0)]
    assert sols(T, qv(1), p_lt=4) == [(0, 0, 1, 0), (3, 1, 0, 0)]
    assert sols(T, qv(1), forbid_triple_ub=True) == [(0, 0, 1, 0), (3, 1, 0, 0)]
    assert sols(T, qv(1), bounds={"r": 0}) == [(3, 1, 0, 0), (8, 0, 0, 0)]
    with pytest.raises(ValueError):
        CoverQuery(T, qv(0))


def _random_instance(rng):
    theta = rng.choice([AnglePi(1, 3), AnglePi(1, 4), AnglePi(1, 6), ExactAngle.from_cos(F(3, 5))])
    a = F(rng.randint(1, 12), rng.randint(1, 12))
    T = make_right(theta, a)
    L = rng.randint(0, 3) * T.a + rng.randint(0, 2) * T.b + rng.randint(0, 2) + rng.randint(0, 3) * T.h
    if rng.random() < 0.3 or not L:
        L = L + F(rng.randint(1, 5), rng.randint(1, 7))
    return T, L


def test_cover_matches_brute_force_on_random_instances():
    rng = random.Random(20240501)
    for _ in range(50):
        T, L = _random_instance(rng)
        assert sols(T, L) == brute_covers(T, L), (T, L)


@settings(max_examples=60)
@given(st.integers(0, 2**32))
def test_cover_matches_brute_force_property(seed):
    T, L = _random_instance(random.Random(seed))
    assert sols(T, L) == brute_covers(T, L)


def test_gtl_examples():
    assert gtl_feasible(R(F(1, 8)), 5, 5) == CoverSolution(0, 1, 0, 0)
    assert gtl_feasible(R(F(1, 4)), 3, 3) == CoverSolution(0, 1, 0, 0)
    assert gtl_feasible(R(F(1, 7)), 3, 3) is None
    assert not gtl_refutes_all_mu(R(F(1, 8)))


def test_gt_membership():
    assert gt_membership(R(F(1, 8))).passed
    assert gt_membership(make_isosceles(AnglePi(1, 3), H3)).status == "fail"
    ok = gt_membership(make_isosceles(AnglePi(1, 3), 1))
    assert ok.passed and "square-free" in ok.witness


def test_gt2_examples():
    assert gt2_cases(make_right(AnglePi(1, 4), F(3, 2))) == "refuted"
    assert gt2_cases(R(F(1, 8))) == "not-applicable"
    assert gt2_cases(R(F(3, 2))) == "not-applicable"


def test_gt2_is_a_partition():
    labels = set()
    for theta in (AnglePi(1, 4), AnglePi(1, 6), AnglePi(1, 3)):
        for a in a_grid(2 if theta.q == 4 else 3, 4, amax=3):
            try:
                T = make_right(theta, a)
            except ValueError:
                continue
            g = gt2_cases(T)
            assert g in {"case1", "case2", "case3", "refuted", "not-applicable"}
            labels.add(g)
    assert "refuted" in labels and "not-applicable" in labels


def test_mtm_examples():
    c = mtm_certificate(R(QuadVal(0, F(1, 4), 3)), 3)
    assert c.certified and c.mode == "symbolic"
    c = mtm_certificate(R(F(1, 8)), 1)
    assert not c.certified and c.witness == CoverSolution(3, 1, 0, 0)
    c = mtm_certificate(make_right(AnglePi(1, 4), S2), 2)
    assert c.certified


def test_sts_examples():
    c = sts_certificate(R(F(1, 8)), 3)
    assert c.certified and c.mode == "symbolic"
    c = sts_certificate(make_right(AnglePi(1, 4), S2), 2)
    assert not c.certified and c.witness == CoverSolution(0, 1, 0, 0)
    with pytest.raises(ValueError):
        sts_certificate(make_isosceles(AnglePi(1, 3), 1))


@pytest.mark.parametrize("a", [F(1, 8), F(1, 4), F(1, 2), F(3, 5), F(7, 3)])
def test_sts_holds_for_rational_bases(a):
    T = R(a)
    for rho in range(1, 11):
        assert all(c.q == 0 for c in cover_solutions(CoverQuery(T, rho * T.h)))
    assert sts_certificate(T, 10).certified


def test_strict_mtm_examples():
    assert sols(R(F(1, 6)), qv(1)) == [(0, 0, 1, 0), (2, 1, 0, 0), (6, 0, 0, 0)]
    c = strict_mtm_certificate(R(F(1, 6)), 1)
    assert not c.certified and c.witness == CoverSolution(2, 1, 0, 0)
    assert c.excluded == ()
    assert strict_mtm_certificate(R(QuadVal(0, F(1, 5), 3)), 3).certified
    c = strict_mtm_certificate(R(F(1, 2)), 1)
    assert not c.certified and c.witness == CoverSolution(0, 1, 0, 0)


def test_adjacency_rule():
    assert adjacency_excluded(CoverSolution(10, 0, 0, 0))
    assert adjacency_excluded(CoverSolution(4, 1, 0, 0))
    assert not adjacency_excluded(CoverSolution(3, 1, 0, 0))


def test_ssts_examples():
    assert ssts_certificate(R(F(1, 8))).certified
    c = ssts_certificate(make_right(AnglePi(1, 4), S2))
    assert not c.certified and c.witness == (1, 0)
    c = ssts_certificate(R(H3))
    assert c.certified and c.condition == 2
    with pytest.raises(ValueError):
        ssts_certificate(make_isosceles(AnglePi(1, 3), 1))


def test_angle_checks():
    assert cii_check(AnglePi(1, 3)).passed
    assert not cii_check(AnglePi(1, 4)).passed
    assert not cii_check(AnglePi(1, 5)).passed
    assert not rii_check(AnglePi(1, 5)).passed
    assert rii_check(AnglePi(1, 3)).passed
    assert rii_check(AnglePi(1, 6)).passed


def test_refutation_examples():
    assert reptile_refuted(R(F(1, 8))) is None
    why = reptile_refuted(R(QuadVal(0, F(1, 4), 3)))
    assert why and why.startswith("mtm+ssts")
    assert reptile_refuted(make_isosceles(AnglePi(1, 4), 1)).startswith("cii")
    assert reptile_refuted(R(F(1, 10))).startswith("strict-mtm+sts")


def test_known_reptiles_survive():
    for T in (R(F(1, 2)), R(1), make_right(AnglePi(1, 4), S2), make_isosceles(AnglePi(1, 3), 1)):
        assert reptile_refuted(T) is None, verdict(T).report()


def test_report_format():
    v = verdict(R(F(1, 8)), FilterOptions(rho_max=4))
    lines = v.report().splitlines()
    assert all(len(line.split("\t")) == 3 for line in lines)
    assert lines[-1].startswith("verdict\tsurvives")
    assert any(line.startswith("gt2\tn/a") for line in lines)


def test_refuted_verdict_has_witness():
    v = verdict(R(QuadVal(0, F(1, 4), 3)))
    assert v.refuted
    assert all(c.witness for _, c in v.entries if c.status == "fail")


def test_gt2_never_refutes_alone():
    T = make_right(AnglePi(1, 4), S2)
    assert gt2_cases(T) == "refuted"
    v = verdict(T)
    assert dict(v.entries)["gt2"].status == "partial"
    assert not v.refuted
