import itertools
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from reptile.angles import (
    AnglePi,
    DegreeTooHigh,
    ExactAngle,
    angle_fill_arrangements,
    canonical_parts,
    cos_degree,
    cos_pi,
    cos_sin_exact,
    deg2_angle_list,
    parse_angle,
    parse_exact_angle,
    sin_pi,
)
from reptile.exactfield import QuadVal, qv
from reptile.trapezoid import make_isosceles, make_right

F = Fraction
FIVE = {AnglePi(1, 6), AnglePi(1, 5), AnglePi(1, 4), AnglePi(1, 3), AnglePi(2, 5)}


def test_standard_values():
    e = cos_sin_exact(AnglePi(1, 3))
    assert (e.cosv, e.sinv) == (qv(F(1, 2)), QuadVal(0, F(1, 2), 3))
    e = cos_sin_exact(AnglePi(1, 4))
    assert e.cosv == e.sinv == QuadVal(0, F(1, 2), 2)


def test_pi_over_5_sine_too_high():
    assert cos_pi(F(1, 5)) == QuadVal(F(1, 4), F(1, 4), 5)
    with pytest.raises(DegreeTooHigh):
        cos_sin_exact(AnglePi(1, 5))


@pytest.mark.parametrize("a, deg", [(AnglePi(1, 3), 1), (AnglePi(1, 5), 2), (AnglePi(1, 7), 3)])
def test_cos_degree_examples(a, deg):
    assert cos_degree(a) == deg


def _numeric_degree(a: AnglePi) -> int:
    mpmath.mp.dps = 60
    x = mpmath.cos(mpmath.pi * a.p / a.q)
    if abs(x) < mpmath.mpf(10) ** -50:
        return 1
    for k in range(1, 5):
        if mpmath.findpoly(x, k, maxcoeff=10**6):
            return k
    return 5


def test_cos_degree_against_minimal_polynomial_search():
    for q in range(2, 25):
        for p in range(1, q):
            a = AnglePi.of(F(p, q))
            if a.q != q:
                continue
            want = cos_degree(a)
            assert _numeric_degree(a) == (want if want <= 4 else 5), a


def test_deg2_list():
    assert deg2_angle_list(12) == FIVE
    assert deg2_angle_list(60) == FIVE
    assert deg2_angle_list(3) == {AnglePi(1, 3)}


@given(st.integers(1, 40), st.integers(1, 24))
def test_cos_sin_match_floats(p, q):
    r = F(p, q)
    try:
        c, s = cos_pi(r), sin_pi(r)
    except DegreeTooHigh:
        return
    mpmath.mp.dps = 40
    assert abs(float(c) - float(mpmath.cos(mpmath.pi * r.numerator / r.denominator))) < 1e-12
    assert abs(float(s) - float(mpmath.sin(mpmath.pi * r.numerator / r.denominator))) < 1e-12


def test_pythagoras_on_admissible_angles():
    for a in deg2_angle_list(60):
        try:
            e = cos_sin_exact(a)
        except DegreeTooHigh:
            continue
        assert e.cosv * e.cosv + e.sinv * e.sinv == 1
        assert e.sinv.sign() > 0


def test_from_cos_irrational_angle():
    e = ExactAngle.from_cos(F(3, 5))
    assert e.sinv == F(4, 5) and e.rational_tag is None
    assert parse_exact_angle("acos(3/5)") == e


def test_angle_literals():
    assert parse_angle("1/3*pi") == AnglePi(1, 3)
    assert parse_angle("pi/4") == AnglePi(1, 4)
    assert AnglePi(2, 5).literal() == "2/5*pi"
    with pytest.raises(ValueError):
        AnglePi(3, 2)


# -- fill arrangements ------------------------------------------------------------

IRR = make_right(ExactAngle.from_cos(F(3, 5)), F(1, 5))
R13 = make_right(AnglePi(1, 3), F(1, 8))


def test_full_turn_irrational_right_has_six():
    got = angle_fill_arrangements((0, 2), IRR, theta_rational=False)
    assert len(got) == 6
    assert {a.parts for a in got} == {
        ("θ", "π−θ", "π"),
        ("π/2", "π/2", "π"),
        ("θ", "θ", "π−θ", "π−θ"),
        ("θ", "π−θ", "θ", "π−θ"),
        ("θ", "π−θ", "π/2", "π/2"),
        ("π/2", "π/2", "π/2", "π/2"),
    }


def test_single_theta():
    for tile, rational in ((IRR, False), (R13, True), (make_isosceles(AnglePi(1, 3), 1), True)):
        got = angle_fill_arrangements((1, 0), tile, rational)
        assert [a.parts for a in got] == [("θ",)]


def test_straight_angle_rational():
    parts = {a.parts for a in angle_fill_arrangements((0, 1), R13, True)}
    assert ("π/2", "π/2") in parts and ("θ", "π−θ") in parts


def test_parts_sum_to_target():
    for target in ((0, 1), (0, 2), (0, F(3, 2))):
        for a in angle_fill_arrangements(target, R13, True):
            assert a.value(F(1, 3)) == target[1]
    for a in angle_fill_arrangements((0, 2), IRR, False):
        for theta in (F(1, 7), F(2, 9)):
            assert a.value(theta) == 2


@given(st.lists(st.sampled_from(["θ", "π−θ", "π/2", "π"]), min_size=1, max_size=7), st.integers(0, 6), st.booleans())
def test_canonical_form_is_invariant(parts, shift, flip):
    parts = tuple(parts)
    k = shift % len(parts)
    moved = parts[k:] + parts[:k]
    if flip:
        moved = moved[::-1]
    assert canonical_parts(moved, cyclic=True) == canonical_parts(parts, cyclic=True)
    assert canonical_parts(parts[::-1], cyclic=False) == canonical_parts(parts, cyclic=False)


def test_arrangements_are_distinct_canonical_forms():
    got = angle_fill_arrangements((0, 2), R13, True)
    forms = [a.parts for a in got]
    assert len(forms) == len(set(forms))
    for f in forms:
        assert canonical_parts(f, cyclic=True) == f
    # independent count: all cyclic words over the alphabet summing to 2*pi
    vals = {"θ": F(1, 3), "π−θ": F(2, 3), "π/2": F(1, 2), "π": F(1)}
    seen = set()
    for k in range(2, 7):
        for w in itertools.product(vals, repeat=k):
            if sum(vals[s] for s in w) == 2 and w.count("π") <= 1:
                seen.add(canonical_parts(w, cyclic=True))
    assert seen == set(forms)
