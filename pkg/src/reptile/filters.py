"""Necessary conditions for reptile trapezoids and the edge-cover arithmetic behind them.

Lengths are compared through their coordinates in the basis {1, sqrt d}:
an identity p*a + q*b + r + s*h = L holds exactly when it holds for the
rational parts and for the radical parts separately.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .angles import AnglePi, ExactAngle, cos_degree, cos_degree_pi, cos_sin_exact, is_acute
from .exactfield import FieldError, QuadVal, floor_div, qv, qx_decompose
from .trapezoid import TrapezoidSpec, make_isosceles, make_right

PI_4 = AnglePi(1, 4)


# -- cover arithmetic ----------------------------------------------------

@dataclass(frozen=True, order=True)
class CoverSolution:
    p: int
    q: int
    r: int
    s: int

    def value(self, T: TrapezoidSpec) -> QuadVal:
        return self.p * T.a + self.q * T.b + self.r + self.s * T.h

    def __str__(self):
        return f"({self.p},{self.q},{self.r},{self.s})"


@dataclass
class CoverQuery:
    """Find non-negative p, q, r, s with p*a + q*b + r + s*h = L."""

    T: TrapezoidSpec
    L: QuadVal
    p_lt: int | None = None
    require_q_zero: bool = False
    require_p_q_zero: bool = False
    p_le_q_plus_1: bool = False
    forbid_triple_ub: bool = False
    bounds: dict = field(default_factory=dict)

    def __post_init__(self):
        self.L = qv(self.L)
        if self.L.sign() <= 0:
            raise ValueError("cover length must be positive")


def adjacency_excluded(sol: CoverSolution) -> bool:
    """Covers that force three upper bases in a row, or the run ub,ub,lb,ub,ub."""
    separators = sol.q + sol.r + sol.s
    if sol.p > 2 * (separators + 1):
        return True
    return (sol.p, sol.q, sol.r, sol.s) == (4, 1, 0, 0)


def _bound(L: QuadVal, x: QuadVal) -> int:
    return max(floor_div(L, x), 0)


def cover_solutions(query: CoverQuery) -> list[CoverSolution]:
    T, L = query.T, query.L
    a, b, h = T.a, T.b, T.h
    P = min(_bound(L, a), query.bounds.get("p", math.inf))
    Q = min(_bound(L, b), query.bounds.get("q", math.inf))
    R = min(L.floor(), query.bounds.get("r", math.inf))
    S = min(_bound(L, h), query.bounds.get("s", math.inf))
    if query.p_lt is not None:
        P = min(P, query.p_lt - 1)
    if query.require_q_zero or query.require_p_q_zero:
        Q = 0
    if query.require_p_q_zero:
        P = 0
    au, av, bu, bv, hu, hv = a.u, a.v, b.u, b.v, h.u, h.v
    Lu, Lv = L.u, L.v
    out = []
    for p in range(int(P) + 1):
        for q in range(int(Q) + 1):
            if query.p_le_q_plus_1 and p > q + 1:
                continue
            rv = Lv - p * av - q * bv
            if hv != 0:
                s_f = rv / hv
                if s_f.denominator != 1 or not 0 <= s_f <= S:
                    continue
                s_range = (int(s_f),)
            elif rv != 0:
                continue
            else:
                s_range = range(int(S) + 1)
            for s in s_range:
                r_f = Lu - p * au - q * bu - s * hu
                if r_f.denominator != 1 or not 0 <= r_f <= R:
                    continue
                sol = CoverSolution(p, q, int(r_f), s)
                if query.forbid_triple_ub and adjacency_excluded(sol):
                    continue
                out.append(sol)
    out.sort()
    return out


def gtl_feasible(T: TrapezoidSpec, mu: int, rho: int) -> CoverSolution | None:
    """A cover of rho upper bases' length that uses fewer than mu upper bases."""
    sols = cover_solutions(CoverQuery(T, rho * T.a, p_lt=mu))
    return sols[0] if sols else None


def _coords(x: QuadVal) -> tuple[Fraction, Fraction]:
    return x.u, x.v


def _in_cone(target, gens) -> bool:
    """Whether the nonzero rational 2-vector ``target`` is a non-negative combination of ``gens``."""
    tx, ty = target
    gens = [g for g in gens if g != (0, 0)]
    for gx, gy in gens:
        if gx * ty - gy * tx == 0 and gx * tx + gy * ty > 0:
            return True
    for (ax, ay), (bx, by) in combinations(gens, 2):
        det = ax * by - ay * bx
        if det == 0:
            continue
        lam = (tx * by - ty * bx) / det
        mu = (ax * ty - ay * tx) / det
        if lam >= 0 and mu >= 0:
            return True
    return False


def gtl_refutes_all_mu(T: TrapezoidSpec) -> bool:
    """True when k*a = q*b + r + s*h has no solution with k >= 1, for every mu at once.

    A cover of mu*a with p < mu upper bases leaves k = mu - p >= 1 upper
    bases' worth to be covered by the other edges; rational solutions scale
    to integer ones, so this is a cone-membership question.
    """
    return not _in_cone(_coords(T.a), [_coords(T.b), (Fraction(1), Fraction(0)), _coords(T.h)])


# -- Q_h membership and sign cases -------------------------------------------

@dataclass(frozen=True)
class Check:
    status: str          # "pass", "fail" or "n/a"
    witness: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def gt_membership(T: TrapezoidSpec) -> Check:
    """a and b must lie in the rational span of 1 and h."""
    if T.h.b:
        return Check("pass", "h irrational; a, b in Q_h")
    if T.a.b or T.b.b:
        bad = "a" if T.a.b else "b"
        return Check("fail", f"h = {T.h} rational but {bad} irrational")
    return Check("pass", "h rational: not rep-n for square-free n > 1")


def gt2_cases(T: TrapezoidSpec) -> str:
    if not T.h.b or not T.b > 1 or T.is_pi3_right():
        return "not-applicable"
    ca, cb = qx_decompose(T.a, T.h), qx_decompose(T.b, T.h)
    if ca.c1 > 0 and ca.cx < 0 and cb.c1 <= 0:
        return "case1"
    if ca.c1 < 0 and ca.cx > 0 and cb.cx <= 0:
        return "case2"
    if T.klass == "obtuse" and ca.cx == 0 and cb.cx == 0:
        return "case3"
    return "refuted"


# -- covering certificates ----------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    certified: bool
    mode: str            # "symbolic", "bounded" or "refuted-by-witness"
    witness: CoverSolution | None = None
    rho: int | None = None
    rho_max: int | None = None
    excluded: tuple = ()

    def __str__(self):
        if self.certified:
            note = "certified-symbolically" if self.mode == "symbolic" else f"certified-up-to-bound rho<={self.rho_max}"
            if self.excluded:
                note += " (excluded by adjacency: " + ", ".join(map(str, self.excluded)) + ")"
            return note
        return f"uncertified witness {self.witness} at rho={self.rho}"


def _cone_zero_with_q(av, bv, hv) -> bool:
    """Some p, s >= 0 and q > 0 give p*av + q*bv + s*hv = 0."""
    if bv == 0:
        return True
    if bv > 0:
        return av < 0 or hv < 0
    return av > 0 or hv > 0


def mtm_certificate(T: TrapezoidSpec, rho_max: int = 6) -> Certificate:
    """No cover of an integer length rho uses a lower base."""
    for rho in range(1, rho_max + 1):
        for sol in cover_solutions(CoverQuery(T, qv(rho, T.d))):
            if sol.q > 0:
                return Certificate(False, "refuted-by-witness", sol, rho, rho_max)
    if not _cone_zero_with_q(T.a.v, T.b.v, T.h.v):
        return Certificate(True, "symbolic", rho_max=rho_max)
    return Certificate(True, "bounded", rho_max=rho_max)


def _sts_symbolic(T: TrapezoidSpec) -> bool:
    if T.h.b:
        ca, cb = qx_decompose(T.a, T.h), qx_decompose(T.b, T.h)
        return cb.c1 > 0 and ca.c1 >= 0
    av, bv = T.a.v, T.b.v
    if bv == 0:
        return False
    return av == 0 or (av > 0) == (bv > 0)


def sts_certificate(T: TrapezoidSpec, rho_max: int = 6) -> Certificate:
    """No cover of rho subsidiary legs' length uses a lower base."""
    if T.isosceles:
        raise ValueError("sub-to-sub certificate needs a non-isosceles trapezoid")
    for rho in range(1, rho_max + 1):
        for sol in cover_solutions(CoverQuery(T, rho * T.h)):
            if sol.q > 0:
                return Certificate(False, "refuted-by-witness", sol, rho, rho_max)
    return Certificate(True, "symbolic" if _sts_symbolic(T) else "bounded", rho_max=rho_max)


def strict_mtm_certificate(T: TrapezoidSpec, rho_max: int = 6, adjacency: bool = True) -> Certificate:
    """Covers of integer lengths use neither upper nor lower bases.

    With ``adjacency`` the covers that would put three upper bases in a row
    (or the run ub,ub,lb,ub,ub) are set aside and listed as excluded.
    """
    excluded = []
    for rho in range(1, rho_max + 1):
        for sol in cover_solutions(CoverQuery(T, qv(rho, T.d))):
            if sol.p == 0 and sol.q == 0:
                continue
            if adjacency and adjacency_excluded(sol):
                excluded.append(sol)
                continue
            return Certificate(False, "refuted-by-witness", sol, rho, rho_max, tuple(excluded))
    av, bv, hv = T.a.v, T.b.v, T.h.v
    symbolic = av != 0 and bv != 0 and (av > 0) == (bv > 0) and hv * av >= 0 and not excluded
    return Certificate(True, "symbolic" if symbolic else "bounded", rho_max=rho_max, excluded=tuple(excluded))


@dataclass(frozen=True)
class StairCertificate:
    certified: bool
    condition: int | None
    witness: tuple[int, int] | None = None

    def __str__(self):
        if self.certified:
            return f"certified (condition {self.condition})"
        return f"uncertified witness (p,q)={self.witness}"


def ssts_certificate(T: TrapezoidSpec) -> StairCertificate:
    """Stair-like sub-to-sub certificate for right trapezoids.

    Condition 1: no p <= q + 1 with p*a + q*b = h.
    Condition 2: a = h and theta != pi/4.
    """
    if T.klass != "right":
        raise ValueError("stair certificate needs a right trapezoid")
    witness = None
    for q in range(floor_div(T.h, T.b) + 1):
        for p in range(min(floor_div(T.h, T.a), q + 1) + 1):
            if p + q and p * T.a + q * T.b == T.h:
                witness = (p, q)
                break
        if witness:
            break
    if witness is None:
        return StairCertificate(True, 1)
    if T.a == T.h and T.theta.rational_tag != PI_4 and T.theta.cosv != T.theta.sinv:
        return StairCertificate(True, 2, witness)
    return StairCertificate(False, None, witness)


# -- angle filters -------------------------------------------------------------

def cii_check(theta: AnglePi) -> Check:
    """Isosceles reptiles need a rational cosine, which for an acute angle means pi/3."""
    if not is_acute(theta):
        return Check("fail", f"{theta} not acute")
    deg = cos_degree(theta)
    if deg == 1:
        return Check("pass", "cos rational")
    return Check("fail", f"cos({theta}) has degree {deg}")


def rii_check(theta) -> Check:
    """Right reptiles need cos and sin of degree at most 2."""
    if isinstance(theta, ExactAngle):
        if theta.rational_tag is None:
            return Check("pass", "cos, sin in one quadratic field")
        theta = theta.rational_tag
    dc = cos_degree(theta)
    ds = cos_degree_pi(Fraction(1, 2) - theta.frac)
    if dc > 2:
        return Check("fail", f"cos({theta}) has degree {dc}")
    if ds > 2:
        return Check("fail", f"sin({theta}) has degree {ds}")
    return Check("pass", f"degrees cos {dc}, sin {ds}")


# -- verdicts ------------------------------------------------------------------

@dataclass
class CandidateVerdict:
    label: str
    entries: list = field(default_factory=list)   # (name, Check)

    def add(self, name: str, check: Check) -> None:
        self.entries.append((name, check))

    @property
    def refuted(self) -> bool:
        return any(c.status == "fail" for _, c in self.entries)

    def reason(self) -> str | None:
        for name, c in self.entries:
            if c.status == "fail":
                return f"{name}: {c.witness}"
        return None

    def report(self) -> str:
        lines = [f"{name}\t{c.status}\t{c.witness}" for name, c in self.entries]
        lines.append(f"verdict\t{'refuted' if self.refuted else 'survives'}\t{self.label}")
        return "\n".join(lines) + "\n"


@dataclass
class FilterOptions:
    rho_max: int = 6


def verdict(T: TrapezoidSpec, opts: FilterOptions | None = None) -> CandidateVerdict:
    opts = opts or FilterOptions()
    v = CandidateVerdict(str(T))
    tag = T.theta.rational_tag
    if T.isosceles:
        v.add("cii", cii_check(tag) if tag else Check("n/a", "theta not a rational multiple of pi"))
    elif T.klass == "right":
        v.add("rii", rii_check(T.theta))
    v.add("gt", gt_membership(T))
    # the sign cases only exclude rep-mu^2 with mu >= 3, so they never refute on their own
    g = gt2_cases(T)
    if g == "refuted":
        v.add("gt2", Check("partial", "no rep-mu^2 tiling for mu >= 3"))
    else:
        v.add("gt2", Check("n/a" if g == "not-applicable" else "pass", g))
    if gtl_refutes_all_mu(T):
        v.add("gtl", Check("fail", "k*a = q*b + r + s*h has no solution with k >= 1"))
    else:
        w = gtl_feasible(T, 3, 3)
        v.add("gtl", Check("pass", f"mu=rho=3 witness {w}" if w else "cone feasible"))
    mtm = mtm_certificate(T, opts.rho_max)
    if T.klass == "right":
        ss = ssts_certificate(T)
        fires = mtm.certified and mtm.mode == "symbolic" and ss.certified
        v.add("mtm+ssts", Check("fail" if fires else "pass", f"mtm {mtm}; ssts {ss}"))
        if T.is_pi3_right():
            strict = strict_mtm_certificate(T, 1, adjacency=True)
            sts = sts_certificate(T, opts.rho_max)
            fires = strict.certified and sts.certified and sts.mode == "symbolic"
            v.add("strict-mtm+sts", Check("fail" if fires else "pass", f"strict-mtm {strict}; sts {sts}"))
    else:
        fires = mtm.certified and mtm.mode == "symbolic" and T.b > T.h
        v.add("mtm", Check("fail" if fires else "pass", f"mtm {mtm}; lower base longer than legs: {T.b > T.h}"))
    return v


def reptile_refuted(T: TrapezoidSpec, opts: FilterOptions | None = None) -> str | None:
    return verdict(T, opts).reason()


# -- candidate grids -------------------------------------------------------------

def a_grid(d: int, denmax: int, amax=2, radical: bool = True, mixed: bool = False):
    """Upper-base lengths u/v and (u/v)*sqrt(d), v <= denmax, up to amax."""
    amax = Fraction(amax)
    seen = set()
    rats = sorted({Fraction(u, v) for v in range(1, denmax + 1) for u in range(1, int(amax * v) + 1)})
    for r in rats:
        x = QuadVal(r, 0, d)
        seen.add(x)
        yield x
    if d == 1:
        return
    if radical:
        for r in rats:
            x = QuadVal(0, r, d)
            if x <= amax and x not in seen:
                seen.add(x)
                yield x
    if mixed:
        small = [x for x in rats if x.denominator <= 4 and x <= 2]
        for u in small:
            for v in small:
                for su, sv in ((1, 1), (1, -1), (-1, 1)):
                    x = QuadVal(su * u, sv * v, d)
                    if x.sign() > 0 and x <= amax and x not in seen:
                        seen.add(x)
                        yield x


def angle_grid(qmax: int):
    for q in range(2, qmax + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1 and 2 * p < q:
                yield AnglePi(p, q)


def enumerate_candidates(kind: str = "right", qmax: int = 60, denmax: int = 16, amax=2,
                         mixed: bool = False, opts: FilterOptions | None = None):
    """Yield (theta, a, verdict-or-reason) over the grid; angles failing their filter are skipped whole."""
    for th in sorted(angle_grid(qmax), key=lambda t: t.frac):
        check = cii_check(th) if kind == "iso" else rii_check(th)
        if not check.passed:
            yield th, None, check
            continue
        try:
            ex = cos_sin_exact(th)
        except FieldError as e:
            yield th, None, Check("fail", str(e))
            continue
        for a in a_grid(ex.d, denmax, amax, mixed=mixed):
            try:
                T = make_right(ex, a) if kind == "right" else make_isosceles(ex, a)
            except ValueError as e:
                yield th, a, Check("fail", str(e))
                continue
            yield th, a, verdict(T, opts)


def rr_candidates(qmax: int = 60, denmax: int = 16, amax=2, mixed: bool = False) -> list[tuple[AnglePi, QuadVal]]:
    out = []
    for th, a, v in enumerate_candidates("right", qmax, denmax, amax, mixed):
        if isinstance(v, CandidateVerdict) and not v.refuted:
            out.append((th, a))
    return sorted(out, key=lambda t: (t[0].frac, float(t[1])))
