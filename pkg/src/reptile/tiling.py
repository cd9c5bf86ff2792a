"""Placed copies of a trapezoid, exact tiling verification, substitution, files and SVG."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .angles import cos_pi, sin_pi
from .exactfield import FieldError, QuadVal, RadicandMismatch, format_quadval, parse_quadval, qv
from .geometry import (
    CROSS,
    Point2,
    Polygon,
    convex_interiors_overlap,
    point_in_polygon,
    polygon_area,
    segments_intersect,
)
from .trapezoid import TrapezoidSpec, canonical_polygon, parse_trapezoid


def angle_denominator(T: TrapezoidSpec) -> int:
    """L with base angle g = pi/L; 1 when theta is not a rational multiple of pi."""
    th, ps = T.theta.rational_tag, T.psi.rational_tag
    if th is None or ps is None:
        return 1
    return math.lcm(th.q, ps.q)


def orientation_count(T: TrapezoidSpec) -> int:
    return 2 * angle_denominator(T)


def rotation(T: TrapezoidSpec, k: int) -> tuple[QuadVal, QuadVal]:
    """Exact (cos, sin) of k*g."""
    L = angle_denominator(T)
    r = Fraction(k % (2 * L), L)
    c, s = cos_pi(r), sin_pi(r)
    d = T.d
    for x in (c, s):
        if x.b and x.d != d:
            raise RadicandMismatch(f"rotation by {r}*pi leaves Q(sqrt({d}))")
    return QuadVal(c.u, c.v, d), QuadVal(s.u, s.v, d)


@dataclass(frozen=True)
class PlacedTile:
    orient: int
    reflected: bool
    translate: Point2


def transform_points(T: TrapezoidSpec, t: PlacedTile, pts) -> list[Point2]:
    c, s = rotation(T, t.orient)
    out = []
    for p in pts:
        x = -p.x if t.reflected else p.x
        out.append(Point2(c * x - s * p.y + t.translate.x, s * x + c * p.y + t.translate.y))
    return out


def tile_polygon(base: TrapezoidSpec, t: PlacedTile) -> Polygon:
    pts = transform_points(base, t, canonical_polygon(base).vertices)
    if t.reflected:
        pts = pts[::-1]
    return Polygon(tuple(pts))


def sqrt_in_field(n: int, d: int) -> QuadVal | None:
    """sqrt(n) inside Q(sqrt d): k when n = k^2, k*sqrt(d) when n = k^2 d."""
    k = math.isqrt(n)
    if k * k == n:
        return QuadVal(k, 0, d)
    if d > 1 and n % d == 0:
        m = n // d
        k = math.isqrt(m)
        if k * k == m:
            return QuadVal(0, k, d)
    return None


@dataclass
class Tiling:
    base: TrapezoidSpec
    n: int
    scale: QuadVal
    region: Polygon
    tiles: list = field(default_factory=list)

    @classmethod
    def build(cls, base: TrapezoidSpec, n: int, tiles, scale: QuadVal | None = None) -> "Tiling":
        if scale is None:
            scale = sqrt_in_field(n, base.d)
            if scale is None:
                raise FieldError(f"sqrt({n}) is not in Q(sqrt({base.d}))")
        return cls(base, n, scale, canonical_polygon(base, scale), list(tiles))

    def polygons(self) -> list[Polygon]:
        return [tile_polygon(self.base, t) for t in self.tiles]


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def _shape_signature(poly: Polygon):
    vs = poly.vertices
    n = len(vs)
    sides = [(vs[(i + 1) % n] - vs[i]) for i in range(n)]
    return [(sides[i].dot(sides[i]), sides[i].dot(sides[(i + 1) % n])) for i in range(n)]


def congruent(P1: Polygon, P2: Polygon) -> bool:
    """Same side lengths and corner products in cyclic order, possibly mirrored."""
    if len(P1) != len(P2):
        return False
    s1 = _shape_signature(P1)
    n = len(s1)
    rev = Polygon(tuple(reversed(P2.vertices)))
    for cand in (_shape_signature(P2), _shape_signature(rev)):
        for k in range(n):
            if all(cand[(i + k) % n] == s1[i] for i in range(n)):
                return True
    return False


def _bbox(poly: Polygon):
    return poly.bbox()


def verify_tiling(t: Tiling) -> list[Violation]:
    """Exact check: count, congruence, containment, interior-disjointness and area."""
    out = []
    if len(t.tiles) != t.n:
        out.append(Violation("count", f"{len(t.tiles)} tiles for rep-{t.n}"))
    if t.scale * t.scale != t.n:
        out.append(Violation("scale", f"scale^2 = {t.scale * t.scale} != {t.n}"))
    try:
        polys = t.polygons()
    except FieldError as e:
        return out + [Violation("orientation", str(e))]
    ref = canonical_polygon(t.base)
    region = t.region
    for i, P in enumerate(polys):
        if not congruent(P, ref):
            out.append(Violation("congruence", f"tile {i}"))
        if any(point_in_polygon(v, region) < 0 for v in P.vertices):
            out.append(Violation("containment", f"tile {i} has a vertex outside the region"))
            continue
        if any(segments_intersect(e, f)[0] == CROSS for e in P.edges() for f in region.edges()):
            out.append(Violation("containment", f"tile {i} crosses the region boundary"))
    boxes = [_bbox(P) for P in polys]
    order = sorted(range(len(polys)), key=lambda i: boxes[i][0])
    for idx, i in enumerate(order):
        x0, y0, x1, y1 = boxes[i]
        for j in order[idx + 1:]:
            u0, v0, u1, v1 = boxes[j]
            if u0 >= x1:
                break
            if v0 >= y1 or y0 >= v1:
                continue
            if convex_interiors_overlap(polys[i], polys[j]):
                a, b = sorted((i, j))
                out.append(Violation("interior-overlap", f"tiles {a} and {b}"))
    total = qv(0)
    for P in polys:
        total = total + polygon_area(P)
    region_area = polygon_area(region)
    if total != region_area:
        out.append(Violation("area", f"tiles cover {total}, region has {region_area}"))
    return out


def compose(T: TrapezoidSpec, outer: PlacedTile, inner: PlacedTile, inner_scale: QuadVal) -> PlacedTile:
    """outer o (inner scaled by inner_scale): the inner tile sits in a copy of the region placed like ``outer``."""
    N = orientation_count(T)
    if outer.reflected:
        k = (outer.orient - inner.orient) % N
    else:
        k = (outer.orient + inner.orient) % N
    refl = outer.reflected != inner.reflected
    moved = transform_points(T, PlacedTile(outer.orient, outer.reflected, Point2(qv(0), qv(0))), [inner.translate])[0]
    tr = Point2(moved.x + inner_scale * outer.translate.x, moved.y + inner_scale * outer.translate.y)
    return PlacedTile(k, refl, tr)


def substitute(t: Tiling, check: bool = True) -> Tiling:
    """Rep-n tiling to rep-n^2: each tile, blown up by sqrt(n), is tiled like the region."""
    if check:
        bad = verify_tiling(t)
        if bad:
            raise ValueError("cannot substitute into an invalid tiling: " + str(bad[0]))
    tiles = [compose(t.base, outer, inner, t.scale) for outer in t.tiles for inner in t.tiles]
    return Tiling.build(t.base, t.n * t.n, tiles, t.scale * t.scale)


# -- files -------------------------------------------------------------------

HEADER = "reptile-tiling v1"


def serialize_tiling(t: Tiling) -> str:
    d = t.base.d
    fq = lambda x: format_quadval(x, d=d)
    lines = [HEADER, f"d {d}", f"base {t.base.literal()}", f"n {t.n}", f"scale {fq(t.scale)}"]
    for tile in t.tiles:
        lines.append(
            f"tile k={tile.orient} refl={int(tile.reflected)} tx={fq(tile.translate.x)} ty={fq(tile.translate.y)}"
        )
    return "\n".join(lines) + "\n"


class TilingSyntaxError(ValueError):
    pass


def parse_tiling(text: str) -> Tiling:
    rows = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    rows = [(i, ln) for i, ln in rows if ln and not ln.startswith("#")]
    if not rows or rows[0][1] != HEADER:
        raise TilingSyntaxError(f"line {rows[0][0] if rows else 1}: expected {HEADER!r}")
    d = base = n = scale = None
    tiles = []
    for lineno, ln in rows[1:]:
        key, _, rest = ln.partition(" ")
        try:
            if key == "d":
                d = int(rest)
            elif key == "base":
                base = parse_trapezoid(rest)
            elif key == "n":
                n = int(rest)
            elif key == "scale":
                scale = parse_quadval(rest, d)
            elif key == "tile":
                kv = dict(item.split("=", 1) for item in rest.split())
                tx, ty = parse_quadval(kv["tx"], d), parse_quadval(kv["ty"], d)
                if kv["refl"] not in ("0", "1"):
                    raise ValueError(f"refl must be 0 or 1, got {kv['refl']!r}")
                tiles.append(PlacedTile(int(kv["k"]), kv["refl"] == "1", Point2(tx, ty)))
            else:
                raise ValueError(f"unknown record {key!r}")
        except RadicandMismatch as e:
            raise RadicandMismatch(f"line {lineno}: {e}") from None
        except (ValueError, KeyError) as e:
            raise TilingSyntaxError(f"line {lineno}: {e}") from None
    if None in (d, base, n, scale):
        raise TilingSyntaxError("incomplete header: need d, base, n and scale")
    if base.d != 1 and base.d != d:
        raise RadicandMismatch(f"base lives in Q(sqrt({base.d})) but the file says d {d}")
    if len(tiles) != n:
        raise TilingSyntaxError(f"file lists {len(tiles)} tiles for n = {n}")
    return Tiling(base, n, scale, canonical_polygon(base, scale), tiles)


# -- rendering -----------------------------------------------------------------

def _fmt(x) -> str:
    return format(float(x), ".12g")


def render_svg(t: Tiling, path=None) -> str:
    x0, y0, x1, y1 = (float(v) for v in t.region.bbox())
    w, h = x1 - x0, y1 - y0
    N = orientation_count(t.base)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(w)} {_fmt(h)}" '
        f'width="{_fmt(600)}" height="{_fmt(600 * h / w)}">',
        f'<g stroke="black" stroke-width="{_fmt(w / 400)}" stroke-linejoin="round">',
    ]
    for tile, P in zip(t.tiles, t.polygons()):
        hue = (360 * tile.orient // N + (180 // N if tile.reflected else 0)) % 360
        light = 62 if tile.reflected else 76
        d = "M " + " L ".join(f"{_fmt(p.x)} {_fmt(-p.y)}" for p in P.vertices) + " Z"
        parts.append(f'<path d="{d}" fill="hsl({hue},55%,{light}%)"/>')
    parts.append("</g>")
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(svg)
    return svg


# -- sampling cross-check ------------------------------------------------------------

def sample_membership(t: Tiling, samples: int = 10_000, seed: int = 0) -> int:
    """Number of random interior points not covered by exactly one tile.

    Points are exact rationals; points landing on a tile boundary are
    redrawn, so a correct tiling scores 0.
    """
    rng = random.Random(seed)
    polys = t.polygons()
    # float boxes widened a little; only a cheap filter before the exact test
    boxes = [tuple(float(v) + e for v, e in zip(P.bbox(), (-1e-9, -1e-9, 1e-9, 1e-9))) for P in polys]
    x0, y0, x1, y1 = t.region.bbox()
    fx0, fx1 = math.floor(float(x0)) - 1, math.ceil(float(x1)) + 1
    fy0, fy1 = math.floor(float(y0)) - 1, math.ceil(float(y1)) + 1
    den = 1 << 30
    bad = done = 0
    while done < samples:
        px, py = Fraction(rng.randrange(fx0 * den, fx1 * den), den), Fraction(rng.randrange(fy0 * den, fy1 * den), den)
        p, pxf, pyf = Point2(qv(px), qv(py)), float(px), float(py)
        if point_in_polygon(p, t.region) <= 0:
            continue
        hits = 0
        boundary = False
        for P, (bx0, by0, bx1, by1) in zip(polys, boxes):
            if pxf < bx0 or pxf > bx1 or pyf < by0 or pyf > by1:
                continue
            where = point_in_polygon(p, P)
            if where == 0:
                boundary = True
                break
            hits += where > 0
        if boundary:
            continue
        done += 1
        bad += hits != 1
    return bad
