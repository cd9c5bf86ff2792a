"""Exact plane geometry over QuadVal coordinates."""
from __future__ import annotations

from dataclasses import dataclass

from .exactfield import QuadVal, format_quadval, parse_quadval, qv


@dataclass(frozen=True)
class Point2:
    x: QuadVal
    y: QuadVal

    def __post_init__(self):
        object.__setattr__(self, "x", qv(self.x))
        object.__setattr__(self, "y", qv(self.y))

    def __add__(self, o: "Point2") -> "Point2":
        return Point2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Point2") -> "Point2":
        return Point2(self.x - o.x, self.y - o.y)

    def scale(self, k) -> "Point2":
        return Point2(self.x * k, self.y * k)

    def dot(self, o: "Point2") -> QuadVal:
        return self.x * o.x + self.y * o.y

    def cross(self, o: "Point2") -> QuadVal:
        return self.x * o.y - self.y * o.x

    def __iter__(self):
        yield self.x
        yield self.y

    def __str__(self):
        return f"({self.x}, {self.y})"


def P(x, y) -> Point2:
    return Point2(qv(x), qv(y))


def orient2d(p: Point2, q: Point2, r: Point2) -> int:
    return (q - p).cross(r - p).sign()


DISJOINT = "disjoint"
TOUCH = "touch-at-point"
OVERLAP = "overlap-collinear"
CROSS = "proper-cross"


def _on_segment(p: Point2, a: Point2, b: Point2) -> bool:
    """p collinear with a, b and within their bounding box."""
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def segments_intersect(s1, s2):
    """Classify two closed segments; returns (kind, point-or-None)."""
    a, b = s1
    c, d = s2
    o1, o2 = orient2d(a, b, c), orient2d(a, b, d)
    o3, o4 = orient2d(c, d, a), orient2d(c, d, b)
    if o1 == o2 == 0:
        # collinear: compare projections on the dominant direction
        ab = b - a
        key = (lambda p: (p - a).dot(ab))
        lo1, hi1 = sorted([key(a), key(b)])
        lo2, hi2 = sorted([key(c), key(d)])
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return DISJOINT, None
        if lo == hi:
            for p in (a, b):
                if key(p) == lo:
                    return TOUCH, p
        return OVERLAP, None
    if o1 * o2 < 0 and o3 * o4 < 0:
        return CROSS, None
    for p, o, seg in ((c, o1, (a, b)), (d, o2, (a, b)), (a, o3, (c, d)), (b, o4, (c, d))):
        if o == 0 and _on_segment(p, *seg):
            return TOUCH, p
    return DISJOINT, None


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[Point2, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def validate(self) -> list[str]:
        """Problems with the polygon invariants (empty when valid)."""
        vs = self.vertices
        n = len(vs)
        bad = []
        if n < 3:
            return ["fewer than 3 vertices"]
        if polygon_area(self).sign() <= 0:
            bad.append("not counterclockwise")
        for i in range(n):
            if orient2d(vs[i - 1], vs[i], vs[(i + 1) % n]) == 0:
                bad.append(f"collinear at vertex {i}")
        es = self.edges()
        for i in range(n):
            for j in range(i + 1, n):
                kind, pt = segments_intersect(es[i], es[j])
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if kind == DISJOINT:
                    continue
                if adjacent and kind == TOUCH:
                    continue
                bad.append(f"edges {i} and {j} meet ({kind})")
        return bad

    def bbox(self):
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @property
    def d(self) -> int:
        return max(max(p.x.d if p.x.b else 1, p.y.d if p.y.b else 1) for p in self.vertices)

    def to_text(self) -> str:
        d = self.d
        return "".join(f"{format_quadval(p.x, d=d)} {format_quadval(p.y, d=d)}\n" for p in self.vertices)

    @classmethod
    def from_text(cls, text: str) -> "Polygon":
        pts = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            xs, ys = line.split()
            pts.append(Point2(parse_quadval(xs), parse_quadval(ys)))
        return cls(tuple(pts))


def polygon_area(poly: Polygon) -> QuadVal:
    """Signed shoelace area (positive for counterclockwise)."""
    tot = qv(0)
    for p, q in poly.edges():
        tot = tot + p.cross(q)
    return tot / 2


def point_in_polygon(p: Point2, poly: Polygon) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside."""
    inside = False
    for a, b in poly.edges():
        if orient2d(a, b, p) == 0 and _on_segment(p, a, b):
            return 0
        if (a.y > p.y) != (b.y > p.y):
            # x-coordinate of the crossing compared with p.x, sign-exact
            o = orient2d(a, b, p)
            if (b.y > a.y and o > 0) or (b.y < a.y and o < 0):
                inside = not inside
    return 1 if inside else -1


def convex_interiors_overlap(P1: Polygon, P2: Polygon) -> bool:
    """Whether two convex counterclockwise polygons share interior points.

    Separating-axis test: they are interior-disjoint exactly when one edge
    line of either polygon leaves the other polygon in its closed outer
    half-plane.
    """
    for A, B in ((P1, P2), (P2, P1)):
        for a, b in A.edges():
            e = b - a
            if all(e.cross(p - a).sign() <= 0 for p in B.vertices):
                return False
    return True


def ccw(vertices) -> Polygon:
    poly = Polygon(tuple(vertices))
    if polygon_area(poly).sign() < 0:
        poly = Polygon(tuple(reversed(poly.vertices)))
    return poly


M_HAT, S_HAT, S2_HAT = "M_hat", "S_hat", "S2_hat"


def region_family(kind: str, T, rho: int, alpha) -> Polygon:
    """The trapezoid and staircase regions built from T, rho and alpha."""
    alpha = qv(alpha)
    if rho < 1:
        raise ValueError("rho must be positive")
    if alpha.sign() <= 0:
        raise ValueError("alpha must be positive")
    c, s = T.theta.cosv, T.theta.sinv
    cp, sp = T.psi.cosv, T.psi.sinv
    h = T.h
    sg = T.c
    if kind == M_HAT:
        v1 = P(0, 0)
        v2 = Point2(rho * c, rho * s)
        v3 = Point2(v2.x + alpha, v2.y)
        v4 = Point2(rho * (c + sg * h * cp) + alpha, qv(0))
        return ccw([v1, v2, v3, v4])
    if T.isosceles:
        raise ValueError(f"{kind} needs a non-isosceles trapezoid")
    if kind == S_HAT:
        if T.klass == "obtuse":
            f, g = rho * c, qv(0)
        else:
            f, g = rho * h * cp, rho * (h * cp + c)
        t1 = P(0, 0)
        t2 = Point2(rho * h * cp, rho * h * sp)
        t3 = Point2(f + alpha, rho * h * sp)
        t4 = Point2(g + alpha, qv(0))
        return ccw([t1, t2, t3, t4])
    if kind == S2_HAT:
        if T.klass != "right":
            raise ValueError("S2_hat needs a right trapezoid")
        step = T.b - T.a
        w = [Point2(alpha + (rho - 1) * step, qv(0))]
        for i in range(1, rho + 1):
            w.append(Point2((i - 1) * step, (i - 1) * h))
            w.append(Point2((i - 1) * step, i * h))
        w.append(Point2(alpha + (rho - 1) * step, rho * h))
        return ccw(w)
    raise ValueError(f"unknown region kind {kind!r}")


def trapezoid_area(base1, base2, height) -> QuadVal:
    return (qv(base1) + qv(base2)) * qv(height) / 2

