"""Unit trapezoids: main leg 1, angles theta <= psi, derived lengths exact."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .angles import AnglePi, ExactAngle, as_exact, parse_exact_angle
from .exactfield import QuadVal, parse_quadval, qv
from .geometry import Point2, Polygon

RIGHT_ANGLE = ExactAngle(qv(0), qv(1), AnglePi(1, 2))
_C = {"acute": 1, "right": 0, "obtuse": -1}


@dataclass(frozen=True)
class TrapezoidSpec:
    a: QuadVal
    b: QuadVal
    h: QuadVal
    theta: ExactAngle
    psi: ExactAngle
    klass: str
    isosceles: bool

    @property
    def c(self) -> int:
        return _C[self.klass]

    @property
    def d(self) -> int:
        for x in (self.a, self.b, self.h, self.theta.cosv, self.theta.sinv, self.psi.cosv):
            if x.b:
                return x.d
        return 1

    def area(self) -> QuadVal:
        return (self.a + self.b) * self.theta.sinv / 2

    def is_pi3_right(self) -> bool:
        return self.klass == "right" and self.theta.rational_tag == AnglePi(1, 3)

    def __str__(self):
        if self.klass == "right":
            return f"R({self.theta}, {self.a})"
        if self.isosceles:
            return f"I({self.theta}, {self.a})"
        return f"T({self.theta}, {self.psi}, {self.a}, {self.klass})"

    def literal(self) -> str:
        """Text form used by tiling files and the command line."""
        if self.klass == "right":
            return f"right theta={self.theta.literal()} a={self.a}"
        if self.isosceles:
            return f"iso theta={self.theta.literal()} a={self.a}"
        return f"gen theta={self.theta.literal()} psi={self.psi.literal()} a={self.a} class={self.klass}"


def _check(T: TrapezoidSpec) -> TrapezoidSpec:
    if T.a.sign() <= 0:
        raise ValueError("degenerate trapezoid: a <= 0")
    if not T.a < T.b:
        raise ValueError("upper base must be shorter than lower base")
    if T.h.sign() <= 0 or T.h > 1:
        raise ValueError("subsidiary leg must lie in (0, 1]")
    if T.h * T.psi.sinv != T.theta.sinv:
        raise ValueError("height mismatch")
    if T.b != T.a + T.theta.cosv + T.c * T.h * T.psi.cosv:
        raise ValueError("base relation violated")
    return T


def make_right(theta, a) -> TrapezoidSpec:
    th = as_exact(theta)
    a = qv(a)
    if th.cosv.sign() <= 0:
        raise ValueError("theta must be acute")
    return _check(TrapezoidSpec(a, a + th.cosv, th.sinv, th, RIGHT_ANGLE, "right", False))


def make_general(theta, psi, a, klass: str | None = None) -> TrapezoidSpec:
    """Trapezoid with angles theta <= psi <= pi/2; ``klass`` picks acute or obtuse."""
    th, ps = as_exact(theta), as_exact(psi)
    a = qv(a)
    if ps.cosv == 0:
        if klass not in (None, "right"):
            raise ValueError("psi = pi/2 gives a right trapezoid")
        return make_right(th, a)
    if th.cosv.sign() <= 0 or ps.cosv.sign() <= 0:
        raise ValueError("theta and psi must be acute")
    if th.cosv < ps.cosv:
        raise ValueError("need theta <= psi")
    klass = klass or "acute"
    if klass not in ("acute", "obtuse"):
        raise ValueError(f"bad class {klass!r}")
    h = th.sinv / ps.sinv
    b = a + th.cosv + _C[klass] * h * ps.cosv
    iso = klass == "acute" and th.cosv == ps.cosv
    return _check(TrapezoidSpec(a, b, h, th, ps, klass, iso))


def make_isosceles(theta, a) -> TrapezoidSpec:
    return make_general(theta, theta, a)


def canonical_polygon(T: TrapezoidSpec, scale=1) -> Polygon:
    """Lower base on the x-axis from the origin, main leg rising from the origin."""
    k = qv(scale)
    c, s = T.theta.cosv, T.theta.sinv
    top_left = Point2(c, s)
    top_right = Point2(c + T.a, s)
    pts = [Point2(qv(0), qv(0)), Point2(T.b, qv(0)), top_right, top_left]
    return Polygon(tuple(Point2(p.x * k, p.y * k) for p in pts))


def trapezoid_from_params(kind: str, params: dict) -> TrapezoidSpec:
    kind = kind.lower()
    th = parse_exact_angle(params["theta"])
    a = parse_quadval(params["a"])
    if kind == "right":
        return make_right(th, a)
    if kind == "iso":
        return make_isosceles(th, a)
    if kind == "gen":
        return make_general(th, parse_exact_angle(params["psi"]), a, params.get("class"))
    raise ValueError(f"unknown trapezoid kind {kind!r}")


def parse_trapezoid(text: str) -> TrapezoidSpec:
    """Accept ``right(theta=1/3*pi, a=1/8)`` or ``right theta=1/3*pi a=1/8``."""
    text = text.strip()
    m = re.fullmatch(r"(\w+)\s*\((.*)\)", text)
    if m:
        kind, body = m.group(1), m.group(2)
        items = [x for x in re.split(r"\s*,\s*", body) if x]
    else:
        kind, _, body = text.partition(" ")
        items = body.split()
    params = {}
    for item in items:
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"bad trapezoid parameter {item!r}")
        params[key.strip()] = val.strip()
    return trapezoid_from_params(kind, params)
