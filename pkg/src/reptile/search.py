"""Backtracking search for rep-n tilings, and the small-n refutation rules.

The uncovered part U of the region is kept as an oriented boundary chain,
stored per supporting line as breakpoints with a multiplicity change.  A
tile is removed from U by adding its reversed edges.  At each node the
lowest, then leftmost, boundary vertex is a convex corner of U; any tiling
of U puts a tile vertex there with one tile edge along the boundary ray
that leaves it, so branching over those placements is exhaustive.

All coordinates are pairs of integers (a, b) standing for (a + b*sqrt(d))/D
for a fixed denominator D.  Floats only serve as filters: a float decides
a sign when it is far from zero and an exact integer test runs otherwise.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction

from .angles import angle_fill_arrangements, cos_pi, sin_pi
from .exactfield import QuadVal, RadicandMismatch, _sign_ab
from .filters import CoverQuery, cover_solutions
from .geometry import Point2
from .tiling import PlacedTile, Tiling, angle_denominator, sqrt_in_field, tile_polygon, verify_tiling
from .trapezoid import TrapezoidSpec, canonical_polygon

FULL_GROUP = "full-group"
AXIS_ALIGNED = "axis-aligned-only"

FOUND = "found"
EXHAUSTED = "exhausted-none"
BUDGET = "budget-exceeded"

_EPS = 1e-9


@dataclass
class SearchOptions:
    orientation_set: str = FULL_GROUP
    node_budget: int = 5_000_000
    time_budget: float = 3600.0
    use_cover_pruning: bool = True
    use_angle_pruning: bool = True
    use_area_pruning: bool = True
    parallel_width: int = 1
    log_limit: int = 10_000
    count_all: bool = False

    def __post_init__(self):
        if self.orientation_set not in (FULL_GROUP, AXIS_ALIGNED):
            raise ValueError(f"unknown orientation set {self.orientation_set!r}")
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")
        if self.parallel_width < 1:
            raise ValueError("parallel width must be at least 1")


@dataclass
class SearchOutcome:
    status: str
    tiling: Tiling | None
    nodes: int
    proof_log: list = field(default_factory=list)
    exhaustive: bool = True
    note: str = ""
    solutions: int = 0

    def summary(self) -> str:
        s = f"status={self.status} nodes={self.nodes}"
        if not self.exhaustive:
            s += " (restricted orientation set, non-exhaustive)"
        return s


def scale_factor(n: int, d: int) -> QuadVal | None:
    """sqrt(n) when it lies in Q(sqrt d), otherwise None (no rep-n possible)."""
    if n < 1:
        raise ValueError("n must be positive")
    return sqrt_in_field(n, d)


# -- small-n rules -------------------------------------------------------------

@dataclass(frozen=True)
class SmallNResult:
    refuted: bool
    rule: str | None
    reason: str


def refute_small_n(T: TrapezoidSpec, n: int) -> SmallNResult:
    """Exact refutation rules for rep-n of a right trapezoid."""
    if T.klass != "right":
        raise ValueError("refute_small_n needs a right trapezoid")
    k = scale_factor(n, T.d)
    if k is None:
        return SmallNResult(True, "field", f"sqrt({n}) is not in Q(sqrt({T.d}))")
    if n == 1:
        return SmallNResult(False, None, "n = 1 is the trivial tiling")
    # A: the long leg of the big copy starts at the theta corner, where a
    # lower base or a long leg must lie; covers made of short legs only fail.
    covers = cover_solutions(CoverQuery(T, k))
    if not any(c.q + c.r for c in covers):
        listed = ", ".join(str(c) for c in covers) or "none"
        return SmallNResult(True, "A", f"long leg {k} is covered only by short legs: {listed}")
    # B: the short top of the big copy ends at a right corner that only a
    # single right angle fills, so one tile sits there with its top on it.
    top = k * T.a
    right_only = [str(x) for x in angle_fill_arrangements((0, Fraction(1, 2)), T, T.theta.rational_tag is not None)]
    if top < T.b and top < T.h and right_only == ["π/2"]:
        residual = top - T.a
        if 0 < residual < min(T.b, 1):
            return SmallNResult(
                True, "B", f"top {top} leaves a run of {residual}, shorter than a lower base or long leg"
            )
    return SmallNResult(False, None, "inconclusive")


# -- exact integer helpers ----------------------------------------------------------

class _Budget(Exception):
    pass


class _Stop(Exception):
    pass


def _int_pair(x: QuadVal, D: int, d: int) -> tuple[int, int]:
    if x.b and x.d != d:
        raise RadicandMismatch(f"{x} is outside Q(sqrt({d}))")
    m = D // x.c
    return x.a * m, x.b * m


class _Engine:
    def __init__(self, T: TrapezoidSpec, n: int, opts: SearchOptions):
        self.T, self.n, self.opts = T, n, opts
        d = self.d = T.d
        self.sqd = math.sqrt(d)
        scale = scale_factor(n, d)
        if scale is None:
            raise ValueError(f"sqrt({n}) is not in Q(sqrt({d}))")
        self.scale = scale
        L = angle_denominator(T)
        self.rational = T.theta.rational_tag is not None and T.psi.rational_tag is not None
        self.L = L
        if not self.rational:
            rots = [0, 1]
        elif opts.orientation_set == AXIS_ALIGNED:
            rots = [0, L]
        else:
            rots = list(range(2 * L))
        self.exhaustive = self.rational
        self.orients = [(k, r) for k in rots for r in (False, True)]
        zero = Point2(QuadVal(0), QuadVal(0))
        shapes = [tile_polygon(T, PlacedTile(k, r, zero)).vertices for k, r in self.orients]
        region = canonical_polygon(T, scale).vertices

        units = self._unit_vectors(shapes)
        dens = [x.c for pts in shapes + [region] for p in pts for x in p]
        dens += [x.c for u in units for x in u[0]]
        D = 1
        for c in dens:
            D = math.lcm(D, c)
        self.D = D
        ip = lambda p: _int_pair(p.x, D, d) + _int_pair(p.y, D, d)
        self.dirs = [ip(Point2(*u[0])) for u in units]
        self.dir_units = [u[1] for u in units]
        nd = len(self.dirs)
        self.nd = nd
        self.opp = [self._match_dir(self._neg(v)) for v in self.dirs]
        self.cls = [min(i, self.opp[i]) for i in range(nd)]

        self.rel = [[ip(p) for p in pts] for pts in shapes]
        self.relf = [[self._pf(p) for p in pts] for pts in self.rel]
        self.edge_dir = []
        self.edge_vec = []
        for pts in self.rel:
            vs = [self._sub(pts[(i + 1) % 4], pts[i]) for i in range(4)]
            self.edge_vec.append([(v, self._pf(v)) for v in vs])
            self.edge_dir.append([self._match_dir(v) for v in vs])
        self.region = [ip(p) for p in region]

        # placements whose edge leaving vertex j runs in direction k
        self.table = [[] for _ in range(nd)]
        for oi in range(len(self.orients)):
            for j in range(4):
                self.table[self.edge_dir[oi][j]].append((oi, j))

        tw = self._twice_area(self.rel[0])
        self.tile_area2 = tw
        self.fillable = self._fillable_angles() if self.rational else None
        self.cover_memo: dict = {}
        self.fcache: dict = {}
        self.nodes = 0
        self.solutions = 0
        self.first = None
        self.log: list[str] = []
        self.deadline = None
        self.stop_flag = None

    # -- directions --------------------------------------------------------------
    def _unit_vectors(self, shapes):
        """Unit vectors of every edge direction, sorted by angle, with angle in units of pi/L."""
        T = self.T
        if self.rational:
            out = []
            for k in range(2 * self.L):
                r = Fraction(k, self.L)
                c, s = cos_pi(r), sin_pi(r)
                out.append(((QuadVal(c.u, c.v, self.d), QuadVal(s.u, s.v, self.d)), k))
            return out
        lengths = [T.a, T.b, QuadVal(1), T.h]
        vecs = []
        for pts in shapes:
            for i in range(4):
                e = pts[(i + 1) % 4] - pts[i]
                sq = e.dot(e)
                ln = next(x for x in lengths if x * x == sq)
                for sg in (1, -1):
                    u = (e.x * sg / ln, e.y * sg / ln)
                    if u not in vecs:
                        vecs.append(u)

        def key(u):
            upper = u[1].sign() > 0 or (u[1].sign() == 0 and u[0].sign() > 0)
            return 0 if upper else 1

        import functools

        def cmp(u, w):
            if key(u) != key(w):
                return key(u) - key(w)
            return -(u[0] * w[1] - u[1] * w[0]).sign()

        vecs.sort(key=functools.cmp_to_key(cmp))
        return [(u, None) for u in vecs]

    def _match_dir(self, v) -> int:
        for i, u in enumerate(self.dirs):
            if self._cross_sign(u, v) == 0 and self._dot_sign(u, v) > 0:
                return i
        raise ValueError("edge direction outside the orientation set")

    def _fillable_angles(self):
        """Sector sizes (in units of pi/L) that tile corners can fill."""
        L = self.L
        ok = [False] * (2 * L + 1)
        ok[L] = True  # a tile edge passing straight through
        for u in range(1, 2 * L):
            if not ok[u] and angle_fill_arrangements((0, Fraction(u, L)), self.T, True):
                ok[u] = True
        return ok

    # -- exact arithmetic on (a, b) pairs -------------------------------------------------
    @staticmethod
    def _neg(v):
        return tuple(-x for x in v)

    @staticmethod
    def _sub(p, q):
        return (p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3])

    @staticmethod
    def _add(p, q):
        return (p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3])

    def _pf(self, p):
        D, s = self.D, self.sqd
        return ((p[0] + p[1] * s) / D, (p[2] + p[3] * s) / D)

    def _mul(self, x0, x1, y0, y1):
        return x0 * y0 + self.d * x1 * y1, x0 * y1 + x1 * y0

    def _cross(self, u, v):
        a0, a1 = self._mul(u[0], u[1], v[2], v[3])
        b0, b1 = self._mul(u[2], u[3], v[0], v[1])
        return a0 - b0, a1 - b1

    def _dot(self, u, v):
        a0, a1 = self._mul(u[0], u[1], v[0], v[1])
        b0, b1 = self._mul(u[2], u[3], v[2], v[3])
        return a0 + b0, a1 + b1

    def _cross_sign(self, u, v) -> int:
        c = self._cross(u, v)
        return _sign_ab(c[0], c[1], self.d)

    def _dot_sign(self, u, v) -> int:
        c = self._dot(u, v)
        return _sign_ab(c[0], c[1], self.d)

    def _orient(self, u, uf, v, vf) -> int:
        """Sign of cross(u, v), float first."""
        f = uf[0] * vf[1] - uf[1] * vf[0]
        if f > _EPS:
            return 1
        if f < -_EPS:
            return -1
        return self._cross_sign(u, v)

    def _cmp_coord(self, p, q, k) -> int:
        return _sign_ab(p[k] - q[k], p[k + 1] - q[k + 1], self.d)

    def _twice_area(self, pts):
        a = b = 0
        for i in range(len(pts)):
            c = self._cross(pts[i], pts[(i + 1) % len(pts)])
            a += c[0]
            b += c[1]
        return a, b

    # -- boundary chain ----------------------------------------------------------------
    def _add_edge(self, lines, touched, P, Q, di, sign):
        c = self.cls[di]
        w = self.dirs[c]
        off = self._cross(w, P)
        key = (c, off)
        if key not in touched:
            old = lines.get(key)
            touched[key] = dict(old[0]) if old else {}
        bps = touched[key]
        sigma = sign if di == c else -sign
        lo, hi = (P, Q) if di == c else (Q, P)
        for pt, dl in ((lo, sigma), (hi, -sigma)):
            cur = bps.get(pt)
            if cur is None:
                t = self._dot(w, pt)
                tf = (t[0] + t[1] * self.sqd)
                bps[pt] = [tf, t, dl]
            else:
                nd = cur[2] + dl
                if nd:
                    bps[pt] = [cur[0], cur[1], nd]
                else:
                    del bps[pt]

    def _finish(self, lines, touched):
        new = dict(lines)
        for key, bps in touched.items():
            if not bps:
                new.pop(key, None)
                continue
            new[key] = (bps, self._line_segments(key[0], bps))
        return new

    def _line_segments(self, c, bps):
        items = sorted(bps.items(), key=lambda kv: kv[1][0])
        # exact repair of float ties
        for i in range(1, len(items)):
            j = i
            while j > 0 and abs(items[j][1][0] - items[j - 1][1][0]) < _EPS:
                ta, tb = items[j - 1][1][1], items[j][1][1]
                if _sign_ab(ta[0] - tb[0], ta[1] - tb[1], self.d) > 0:
                    items[j - 1], items[j] = items[j], items[j - 1]
                    j -= 1
                else:
                    break
        segs = []
        m = 0
        oc = self.opp[c]
        for i in range(len(items) - 1):
            m += items[i][1][2]
            if m == 0:
                continue
            if abs(m) != 1:
                raise AssertionError("boundary multiplicity out of range")
            A, B = items[i][0], items[i + 1][0]
            segs.append((A, B, c) if m > 0 else (B, A, oc))
        return tuple(segs)

    def _initial_lines(self):
        touched = {}
        R = self.region
        for i in range(len(R)):
            P, Q = R[i], R[(i + 1) % len(R)]
            self._add_edge({}, touched, P, Q, self._match_dir(self._sub(Q, P)), 1)
        return self._finish({}, touched)

    # -- node analysis -----------------------------------------------------------------
    def _pointf(self, p):
        f = self.fcache.get(p)
        if f is None:
            f = self.fcache[p] = self._pf(p)
        return f

    def _analyse(self, segs):
        outs: dict = {}
        ins: dict = {}
        for s in segs:
            outs.setdefault(s[0], {})[s[2]] = s
            ins.setdefault(s[1], {})[s[2]] = s
        return outs, ins

    def _sectors(self, v, outs, ins):
        """(out_dir, in_dir, angle) for every sector at v; angle in units or None."""
        res = []
        nd = self.nd
        od = list(outs[v])
        for di in ins[v]:
            rev = self.opp[di]
            best = min(od, key=lambda o: (rev - o) % nd)
            ang = None
            if self.rational:
                ang = (self.dir_units[rev] - self.dir_units[best]) % (2 * self.L)
            res.append((best, di, ang))
        return res

    def _corner(self, outs):
        best = None
        bf = None
        for p in outs:
            f = self._pointf(p)
            if best is None or f[1] < bf[1] - _EPS or (abs(f[1] - bf[1]) <= _EPS and self._lex_less(p, best)):
                best, bf = p, f
        return best

    def _lex_less(self, p, q) -> bool:
        c = self._cmp_coord(p, q, 2)
        if c:
            return c < 0
        return self._cmp_coord(p, q, 0) < 0

    def _coverable(self, A, B, di) -> bool:
        u = self.dirs[di]
        ln = self._dot(self._sub(B, A), u)
        hit = self.cover_memo.get(ln)
        if hit is None:
            L = QuadVal._raw(ln[0], ln[1], self.D * self.D, self.d)
            hit = self.cover_memo[ln] = bool(cover_solutions(CoverQuery(self.T, L)))
        return hit

    def _prune(self, segs, outs, ins, placed_count):
        opts = self.opts
        if self.rational and opts.use_angle_pruning:
            for v in ins:
                for o, i, ang in self._sectors(v, outs, ins):
                    if not self.fillable[ang]:
                        return "angle", f"sector of {ang}/{self.L}*pi at {self._fmt(v)}"
        if opts.use_cover_pruning:
            convex = {}
            for v in ins:
                for o, i, ang in self._sectors(v, outs, ins):
                    if self.rational:
                        convex[(v, o)] = ang < self.L
                        convex[(v, "in", i)] = ang < self.L
                    else:
                        convex[(v, o)] = convex[(v, "in", i)] = False
            for s in segs:
                A, B, di = s
                if convex.get((A, di)) and convex.get((B, "in", di)) and not self._coverable(A, B, di):
                    return "cover", f"run {self._fmt(A)}->{self._fmt(B)} has no edge cover"
        if opts.use_area_pruning:
            total = 0
            seen = set()
            for s in segs:
                if s in seen:
                    continue
                a2 = [0, 0]
                cur = s
                while cur not in seen:
                    seen.add(cur)
                    c = self._cross(cur[0], cur[1])
                    a2[0] += c[0]
                    a2[1] += c[1]
                    B = cur[1]
                    rev = self.opp[cur[2]]
                    nxt = min(outs[B], key=lambda o: (rev - o) % self.nd)
                    cur = outs[B][nxt]
                k = self._area_multiple(a2)
                if k is None:
                    return "area", f"loop through {self._fmt(s[0])} has area not a multiple of the tile"
                total += k
            if total != self.n - placed_count:
                return "area", f"loops hold {total} tiles, {self.n - placed_count} remain"
        return None

    def _area_multiple(self, a2):
        p, q = self.tile_area2
        r, s = a2
        if q:
            if s % q:
                return None
            k = s // q
        else:
            if s or r % p:
                return None
            k = r // p
        if k <= 0 or r != k * p:
            return None
        return k

    def _fmt(self, p):
        f = self._pointf(p)
        return f"({f[0]:.6g},{f[1]:.6g})"

    # -- placement -------------------------------------------------------------------------
    def _fits(self, oi, j, verts, vf, segs, pf):
        xs = [f[0] for f in vf]
        ys = [f[1] for f in vf]
        bx0, bx1, by0, by1 = min(xs) - _EPS, max(xs) + _EPS, min(ys) - _EPS, max(ys) + _EPS
        ev = self.edge_vec[oi]
        for A, B, _ in segs:
            af, bf = pf(A), pf(B)
            if max(af[0], bf[0]) < bx0 or min(af[0], bf[0]) > bx1:
                continue
            if max(af[1], bf[1]) < by0 or min(af[1], bf[1]) > by1:
                continue
            separated = False
            for i in range(4):
                k = (j + i) % 4
                e, ef = ev[k]
                W, wf = verts[i], vf[i]
                if self._orient(e, ef, self._sub(A, W), (af[0] - wf[0], af[1] - wf[1])) <= 0 and self._orient(
                    e, ef, self._sub(B, W), (bf[0] - wf[0], bf[1] - wf[1])
                ) <= 0:
                    separated = True
                    break
            if separated:
                continue
            S = self._sub(B, A)
            sf = (bf[0] - af[0], bf[1] - af[1])
            signs = set()
            for i in range(4):
                signs.add(self._orient(S, sf, self._sub(verts[i], A), (vf[i][0] - af[0], vf[i][1] - af[1])))
            if 1 in signs and -1 in signs:
                return False
        return True

    def _place(self, lines, oi, j, verts):
        touched = {}
        for i in range(4):
            P, Q = verts[i], verts[(i + 1) % 4]
            self._add_edge(lines, touched, P, Q, self.edge_dir[oi][(j + i) % 4], -1)
        return self._finish(lines, touched)

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.opts.node_budget:
            raise _Budget()
        if (self.nodes & 255) == 0:
            if time.monotonic() > self.deadline:
                raise _Budget()
            if self.stop_flag is not None and self.stop_flag.is_set():
                raise _Stop()

    def _log(self, rule, detail):
        if len(self.log) < self.opts.log_limit:
            self.log.append(f"node={self.nodes} rule={rule} detail={detail}")

    def _children(self, lines, placed_count):
        """Yield (placement, new lines) for the node, or a prune reason."""
        segs = [s for v in lines.values() for s in v[1]]
        if not segs:
            return "done", None
        outs, ins = self._analyse(segs)
        if placed_count:
            why = self._prune(segs, outs, ins, placed_count)
            if why:
                self._log(*why)
                return "pruned", None
        if placed_count >= self.n:
            return "pruned", None
        C = self._corner(outs)
        sectors = self._sectors(C, outs, ins)
        o_dir, i_dir, ang = min(sectors, key=lambda s: s[0])
        cf = self._pointf(C)
        out = []
        seen = set()
        for oi, j in self.table[o_dir]:
            if ang is not None:
                tile_ang = (self.dir_units[self.opp[self.edge_dir[oi][(j - 1) % 4]]] - self.dir_units[o_dir]) % (
                    2 * self.L
                )
                if tile_ang > ang:
                    continue
            base = self.rel[oi][j]
            bfl = self.relf[oi][j]
            verts = [self._add(C, self._sub(self.rel[oi][(j + i) % 4], base)) for i in range(4)]
            vf = [
                (cf[0] + self.relf[oi][(j + i) % 4][0] - bfl[0], cf[1] + self.relf[oi][(j + i) % 4][1] - bfl[1])
                for i in range(4)
            ]
            shape = frozenset(verts)
            if shape in seen:
                # a symmetric tile reaches the same placement twice
                continue
            seen.add(shape)
            if not self._fits(oi, j, verts, vf, segs, self._pointf):
                continue
            out.append(((oi, j, C), verts))
        return "branch", out

    def _dfs(self, lines, placed, count):
        self._tick()
        kind, kids = self._children(lines, count)
        if kind == "done":
            if self.opts.count_all:
                self.solutions += 1
                if self.first is None:
                    self.first = placed
                return None
            return placed
        if kind == "pruned":
            return None
        for (oi, j, C), verts in kids:
            res = self._dfs(self._place(lines, oi, j, verts), (placed, (oi, j, C)), count + 1)
            if res is not None:
                return res
        return None

    def _tiling(self, placed) -> Tiling:
        items = []
        while placed:
            placed, (oi, j, C) = placed
            items.append((oi, j, C))
        items.reverse()
        D, d = self.D, self.d
        q = lambda a, b: QuadVal._raw(a, b, D, d)
        tiles = []
        for oi, j, C in items:
            t = self._sub(C, self.rel[oi][j])
            k, r = self.orients[oi]
            tiles.append(PlacedTile(k, r, Point2(q(t[0], t[1]), q(t[2], t[3]))))
        return Tiling.build(self.T, self.n, tiles, self.scale)

    def root_branches(self):
        lines = self._initial_lines()
        kind, kids = self._children(lines, 0)
        return lines, kids or []

    def run(self, start=None):
        """Depth-first search from the root or from one root branch index."""
        import sys

        sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * self.n + 1000))
        self.deadline = time.monotonic() + self.opts.time_budget
        lines = self._initial_lines()
        try:
            if start is None:
                placed = self._dfs(lines, None, 0)
            else:
                _, kids = self.root_branches()
                (oi, j, C), verts = kids[start]
                self._tick()
                placed = self._dfs(self._place(lines, oi, j, verts), (None, (oi, j, C)), 1)
        except _Budget:
            return BUDGET, None
        except _Stop:
            return "stopped", None
        if placed is None:
            placed = self.first
        if placed is None:
            return EXHAUSTED, None
        return FOUND, self._tiling(placed)


def _outcome(engine: _Engine, status, tiling, nodes, log, solutions=None) -> SearchOutcome:
    if status == FOUND:
        bad = verify_tiling(tiling)
        if bad:
            raise AssertionError("search produced an invalid tiling: " + "; ".join(map(str, bad)))
    note = "" if engine.exhaustive else "restricted orientation set, non-exhaustive"
    if status == EXHAUSTED and not engine.exhaustive:
        note += "; no tiling with rotations by 0 and pi"
    if solutions is None:
        solutions = engine.solutions if engine.opts.count_all else int(status == FOUND)
    return SearchOutcome(status, tiling, nodes, log, engine.exhaustive, note, solutions)


_WORKER_FLAG = None


def _init_worker(flag):
    global _WORKER_FLAG
    _WORKER_FLAG = flag


def _run_branch(args):
    literal, n, opts, index = args
    from .trapezoid import parse_trapezoid

    eng = _Engine(parse_trapezoid(literal), n, opts)
    eng.stop_flag = _WORKER_FLAG
    status, tiling = eng.run(start=index)
    if status == FOUND and _WORKER_FLAG is not None and not opts.count_all:
        _WORKER_FLAG.set()
    return status, tiling, eng.nodes, eng.log, eng.solutions


def search_rep(T: TrapezoidSpec, n: int, opts: SearchOptions | None = None) -> SearchOutcome:
    """Exhaustive search for a tiling of sqrt(n)*T by n copies of T."""
    opts = opts or SearchOptions()
    eng = _Engine(T, n, opts)
    if opts.parallel_width <= 1:
        status, tiling = eng.run()
        return _outcome(eng, status, tiling, eng.nodes, eng.log)

    import multiprocessing

    _, kids = eng.root_branches()
    if not kids:
        return _outcome(eng, EXHAUSTED, None, 1, eng.log)
    mgr = multiprocessing.Manager()
    flag = mgr.Event()
    results = []
    nodes = 1
    sols = 0
    log = []
    try:
        with ProcessPoolExecutor(opts.parallel_width, initializer=_init_worker, initargs=(flag,)) as ex:
            futs = [ex.submit(_run_branch, (T.literal(), n, opts, i)) for i in range(len(kids))]
            for f in as_completed(futs):
                status, tiling, cnt, blog, found = f.result()
                nodes += cnt
                sols += found
                log.extend(blog)
                results.append((status, tiling))
                if status == FOUND and not opts.count_all:
                    flag.set()
                    for g in futs:
                        g.cancel()
    finally:
        mgr.shutdown()
    log = log[: opts.log_limit]
    sols = sols if opts.count_all else None
    if any(s == BUDGET for s, _ in results) and (opts.count_all or not any(s == FOUND for s, _ in results)):
        return _outcome(eng, BUDGET, None, nodes, log, sols)
    for status, tiling in results:
        if status == FOUND:
            return _outcome(eng, FOUND, tiling, nodes, log, sols)
    if any(s == "stopped" for s, _ in results):
        return _outcome(eng, BUDGET, None, nodes, log, sols)
    return _outcome(eng, EXHAUSTED, None, nodes, log, sols)
