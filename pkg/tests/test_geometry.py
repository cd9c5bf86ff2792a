from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from reptile.angles import AnglePi, ExactAngle
from reptile.exactfield import QuadVal, qv, sqrt_of
from reptile.geometry import (
    CROSS,
    DISJOINT,
    M_HAT,
    OVERLAP,
    S2_HAT,
    S_HAT,
    TOUCH,
    P,
    Point2,
    Polygon,
    orient2d,
    point_in_polygon,
    polygon_area,
    region_family,
    segments_intersect,
    trapezoid_area,
)
from reptile.trapezoid import canonical_polygon, make_general, make_isosceles, make_right
from strategies import quadvals

F = Fraction
R18 = make_right(AnglePi(1, 3), F(1, 8))
H3 = QuadVal(0, F(1, 2), 3)


def test_orient_examples():
    assert orient2d(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient2d(P(0, 0), P(1, 0), P(2, 0)) == 0
    assert orient2d(P(0, 0), Point2(qv(1), H3), Point2(qv(2), sqrt_of(3))) == 0


def test_segment_classification():
    assert segments_intersect((P(0, 0), P(1, 0)), (P(0, 1), P(1, 1)))[0] == DISJOINT
    kind, pt = segments_intersect((P(0, 0), P(1, 0)), (P(1, 0), P(2, 0)))
    assert kind == TOUCH and pt == P(1, 0)
    assert segments_intersect((P(0, 0), P(2, 0)), (P(1, 0), P(3, 0)))[0] == OVERLAP
    assert segments_intersect((P(0, 0), P(2, 2)), (P(0, 2), P(2, 0)))[0] == CROSS


def test_areas():
    sq = Polygon((P(0, 0), P(1, 0), P(1, 1), P(0, 1)))
    assert polygon_area(sq) == 1
    assert polygon_area(canonical_polygon(R18)) == QuadVal(0, F(3, 16), 3)
    assert polygon_area(canonical_polygon(make_isosceles(AnglePi(1, 3), 1))) == QuadVal(0, F(3, 4), 3)


def test_point_in_polygon():
    sq = Polygon((P(0, 0), P(1, 0), P(1, 1), P(0, 1)))
    assert point_in_polygon(P(F(1, 2), F(1, 2)), sq) == 1
    assert point_in_polygon(P(1, F(1, 2)), sq) == 0
    assert point_in_polygon(P(2, F(1, 2)), sq) == -1


def test_validate():
    assert Polygon((P(0, 0), P(1, 0), P(1, 1), P(0, 1))).validate() == []
    bow = Polygon((P(0, 0), P(1, 1), P(1, 0), P(0, 1)))
    assert bow.validate()
    assert "not counterclockwise" in Polygon((P(0, 0), P(0, 1), P(1, 1), P(1, 0))).validate()


def test_polygon_text_round_trip():
    poly = canonical_polygon(R18)
    assert Polygon.from_text(poly.to_text()) == poly


def test_m_hat_rho_one_is_the_tile():
    M = region_family(M_HAT, R18, 1, F(1, 8))
    assert set(M.vertices) == set(canonical_polygon(R18).vertices)
    assert Point2(R18.theta.cosv + F(1, 8), qv(0)) in M.vertices


def test_s2_hat_staircase():
    W = region_family(S2_HAT, R18, 2, 1)
    assert len(W) == 6
    assert W.validate() == []
    assert Point2(qv(F(1, 2)), H3) in W.vertices
    assert Point2(qv(F(1, 2)), sqrt_of(3)) in W.vertices


def test_s_hat_obtuse_branch():
    th = ExactAngle.from_cos(F(4, 5))
    ps = ExactAngle.from_cos(F(3, 5))
    T = make_general(th, ps, 1, "obtuse")
    S = region_family(S_HAT, T, 1, F(1, 2))
    assert S.validate() == []
    # f = rho*cos(theta), g = 0
    assert Point2(qv(F(1, 2)), qv(0)) in S.vertices
    assert Point2(T.theta.cosv + F(1, 2), T.h * T.psi.sinv) in S.vertices


def test_family_errors():
    I = make_isosceles(AnglePi(1, 3), 1)
    with pytest.raises(ValueError):
        region_family(S_HAT, I, 1, 1)
    with pytest.raises(ValueError):
        region_family(M_HAT, R18, 0, 1)
    with pytest.raises(ValueError):
        region_family(M_HAT, R18, 1, 0)


@given(st.integers(1, 6), st.sampled_from([F(1, 8), F(1, 2), F(3, 4), F(2)]))
def test_m_hat_area_formula(rho, alpha):
    M = region_family(M_HAT, R18, rho, alpha)
    assert M.validate() == []
    top = qv(alpha)
    bottom = alpha + rho * R18.theta.cosv
    assert polygon_area(M) == trapezoid_area(top, bottom, rho * R18.theta.sinv)


@given(st.integers(1, 6), st.sampled_from([F(1, 8), F(1, 2), F(3, 4), F(2)]))
def test_staircase_is_valid(rho, alpha):
    assert region_family(S2_HAT, R18, rho, alpha).validate() == []
    assert region_family(S_HAT, R18, rho, alpha).validate() == []


@given(quadvals(3), quadvals(3), quadvals(3), quadvals(3))
def test_orient_antisymmetric_and_translation_invariant(a, b, c, t):
    p, q, r = Point2(a, b), Point2(b, c), Point2(c, a)
    assert orient2d(p, q, r) == -orient2d(p, r, q)
    shift = Point2(t, a)
    assert orient2d(p + shift, q + shift, r + shift) == orient2d(p, q, r)
