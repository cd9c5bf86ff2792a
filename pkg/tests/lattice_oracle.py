"""Brute-force exact cover of triangle-lattice regions.

Points are (i, j) = i*(1, 0) + j*(1/2, sqrt(3)/2).  A unit triangle is the
frozenset of its three corners.  Tiles and regions are sets of triangles.
"""
from fractions import Fraction


def up(i, j):
    return frozenset({(i, j), (i + 1, j), (i, j + 1)})


def down(i, j):
    return frozenset({(i + 1, j), (i, j + 1), (i + 1, j + 1)})


def rot60(p):
    i, j = p
    return (-j, i + j)


def mirror(p):
    i, j = p
    return (-i - j, j)


def trapezoid_triangles(a: int, k: int = 1):
    """Isosceles trapezoid with 60 degree base angles, top a, legs 1, scaled by k."""
    tris = set()
    for row in range(k):
        width = (a + 1) * k - row  # up triangles in this row
        for i in range(width):
            tris.add(up(i, row))
        for i in range(width - 1):
            tris.add(down(i, row))
    return tris


def placements(tile, region):
    shapes = set()
    cur = [tuple(sorted(t)) for t in tile]
    for refl in (False, True):
        base = [frozenset(mirror(p) for p in t) for t in tile] if refl else list(tile)
        for _ in range(6):
            shapes.add(frozenset(base))
            base = [frozenset(rot60(p) for p in t) for t in base]
    region_pts = {p for t in region for p in t}
    out = set()
    for shape in shapes:
        anchor = min(p for t in shape for p in t)
        for q in region_pts:
            di, dj = q[0] - anchor[0], q[1] - anchor[1]
            moved = frozenset(frozenset((p[0] + di, p[1] + dj) for p in t) for t in shape)
            if moved <= region:
                out.add(moved)
    return out


def _key(t):
    ys = sorted(Fraction(p[1]) for p in t)
    xs = sorted(Fraction(p[0]) + Fraction(p[1], 2) for p in t)
    return (sum(ys), sum(xs))


def count_tilings(tile, region, limit=None):
    pl = list(placements(tile, region))
    by_tri = {}
    for P in pl:
        for t in P:
            by_tri.setdefault(t, []).append(P)
    order = sorted(region, key=_key)
    found = 0

    def rec(covered):
        nonlocal found
        if limit is not None and found >= limit:
            return
        first = next((t for t in order if t not in covered), None)
        if first is None:
            found += 1
            return
        for P in by_tri.get(first, ()):
            if not (P & covered):
                rec(covered | P)

    rec(frozenset())
    return found
