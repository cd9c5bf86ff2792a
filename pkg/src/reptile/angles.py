"""Rational multiples of pi, their exact cosines and sines, and vertex fills."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactfield import FieldError, QuadVal, RadicandMismatch, qv


class DegreeTooHigh(FieldError):
    pass


@dataclass(frozen=True, order=True)
class AnglePi:
    """The angle p*pi/q."""

    p: int
    q: int

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError("AnglePi needs positive p and q")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"AnglePi {self.p}/{self.q} is not reduced")
        if self.p >= self.q:
            raise ValueError("AnglePi must lie strictly between 0 and pi")

    @classmethod
    def of(cls, r) -> "AnglePi":
        r = Fraction(r)
        return cls(r.numerator, r.denominator)

    @property
    def frac(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        if self.p == 1:
            return f"pi/{self.q}"
        return f"{self.p}pi/{self.q}"

    def literal(self) -> str:
        return f"{self.p}/{self.q}*pi"


def parse_angle(s: str) -> "AnglePi":
    m = re.fullmatch(r"\s*(\d+)(?:/(\d+))?\*?pi\s*", s)
    if not m:
        m2 = re.fullmatch(r"\s*pi(?:/(\d+))?\s*", s)
        if not m2:
            raise ValueError(f"bad angle literal {s!r}")
        return AnglePi.of(Fraction(1, int(m2.group(1) or 1)))
    return AnglePi.of(Fraction(int(m.group(1)), int(m.group(2) or 1)))


def totient(n: int) -> int:
    r, m, k = n, n, 2
    while k * k <= m:
        if m % k == 0:
            while m % k == 0:
                m //= k
            r -= r // k
        k += 1
    if m > 1:
        r -= r // m
    return r


def _order(r: Fraction) -> int:
    """n such that pi*r = 2*pi*k/n with gcd(k, n) = 1."""
    return (Fraction(r) / 2).denominator


def cos_degree_pi(r) -> int:
    n = _order(Fraction(r))
    return 1 if n <= 2 else totient(n) // 2


def cos_degree(a: AnglePi) -> int:
    return cos_degree_pi(a.frac)


# cos(2*pi/n) for every n with totient(n) <= 4
_BASE_COS = {
    1: QuadVal(1),
    2: QuadVal(-1),
    3: QuadVal(Fraction(-1, 2)),
    4: QuadVal(0),
    5: QuadVal(Fraction(-1, 4), Fraction(1, 4), 5),
    6: QuadVal(Fraction(1, 2)),
    8: QuadVal(0, Fraction(1, 2), 2),
    10: QuadVal(Fraction(1, 4), Fraction(1, 4), 5),
    12: QuadVal(0, Fraction(1, 2), 3),
}


def cos_pi(r) -> QuadVal:
    """Exact cos(pi*r) for rational r, when it has degree at most 2."""
    r = Fraction(r)
    half = r / 2
    n = half.denominator
    k = half.numerator % n
    if n not in _BASE_COS:
        raise DegreeTooHigh(f"cos({r}*pi) has degree {cos_degree_pi(r)}")
    c = _BASE_COS[n]
    # Chebyshev recurrence T_k(c)
    t0, t1 = qv(1, c.d), c
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, 2 * c * t1 - t0
    return t1


def sin_pi(r) -> QuadVal:
    return cos_pi(Fraction(1, 2) - Fraction(r))


def field_sqrt(x: QuadVal) -> QuadVal | None:
    """Square root of x inside its own field, or None."""
    if x.sign() < 0:
        return None
    if x == 0:
        return qv(0, x.d)
    u, v, d = x.u, x.v, x.d

    def rat_sqrt(f: Fraction):
        if f < 0:
            return None
        n, m = math.isqrt(f.numerator), math.isqrt(f.denominator)
        if n * n == f.numerator and m * m == f.denominator:
            return Fraction(n, m)
        return None

    if v == 0:
        s = rat_sqrt(u)
        if s is not None:
            return QuadVal(s, 0, d)
        if d > 1:
            # sqrt(u) = t*sqrt(d)  <=>  u/d is a rational square
            t = rat_sqrt(u / d)
            if t is not None:
                return QuadVal(0, t, d)
        return None
    # (p + q sqrt d)^2 = u + v sqrt d  ->  p^2 = (u +- sqrt(u^2 - d v^2)) / 2
    disc = rat_sqrt(u * u - d * v * v)
    if disc is None:
        return None
    for p2 in ((u + disc) / 2, (u - disc) / 2):
        p = rat_sqrt(p2)
        if p is None or p == 0:
            continue
        q = v / (2 * p)
        root = QuadVal(p, q, d)
        if root.sign() < 0:
            root = -root
        if root * root == x:
            return root
    return None


@dataclass(frozen=True)
class ExactAngle:
    cosv: QuadVal
    sinv: QuadVal
    rational_tag: AnglePi | None = None

    def __post_init__(self):
        if self.sinv.sign() <= 0:
            raise ValueError("ExactAngle needs sin > 0")
        if self.cosv * self.cosv + self.sinv * self.sinv != 1:
            raise ValueError("cos^2 + sin^2 != 1")

    @classmethod
    def from_cos(cls, c) -> "ExactAngle":
        c = qv(c)
        s = field_sqrt(1 - c * c)
        if s is None or s == 0:
            raise FieldError(f"sin for cos = {c} is not in the field")
        return cls(c, s, None)

    @property
    def d(self) -> int:
        return self.cosv.d if self.cosv.b else self.sinv.d

    def complement(self) -> "ExactAngle":
        """pi - angle."""
        tag = None
        if self.rational_tag is not None:
            tag = AnglePi.of(1 - self.rational_tag.frac)
        return ExactAngle(-self.cosv, self.sinv, tag)

    def is_right(self) -> bool:
        return self.cosv == 0

    def __str__(self):
        if self.rational_tag is not None:
            return str(self.rational_tag)
        return f"acos({self.cosv})"

    def literal(self) -> str:
        if self.rational_tag is not None:
            return self.rational_tag.literal()
        return f"acos({self.cosv})"


def cos_sin_exact(a: AnglePi) -> ExactAngle:
    deg_c = cos_degree(a)
    if deg_c > 2:
        raise DegreeTooHigh(f"cos({a}) has degree {deg_c}")
    deg_s = cos_degree_pi(Fraction(1, 2) - a.frac)
    if deg_s > 2:
        raise DegreeTooHigh(f"sin({a}) has degree {deg_s}")
    c, s = cos_pi(a.frac), sin_pi(a.frac)
    if c.b and s.b and c.d != s.d:
        raise RadicandMismatch(f"cos and sin of {a} lie in different fields")
    d = c.d if c.b else s.d
    return ExactAngle(QuadVal(c.u, c.v, d), QuadVal(s.u, s.v, d), a)


def as_exact(theta) -> ExactAngle:
    if isinstance(theta, ExactAngle):
        return theta
    if isinstance(theta, AnglePi):
        return cos_sin_exact(theta)
    if isinstance(theta, str):
        return parse_exact_angle(theta)
    raise TypeError(f"not an angle: {theta!r}")


def parse_exact_angle(s: str) -> ExactAngle:
    from .exactfield import parse_quadval

    m = re.fullmatch(r"\s*acos\((.*)\)\s*", s)
    if m:
        return ExactAngle.from_cos(parse_quadval(m.group(1)))
    return cos_sin_exact(parse_angle(s))


def is_acute(a: AnglePi) -> bool:
    return 2 * a.p < a.q


def deg2_angle_list(qmax: int) -> set[AnglePi]:
    """Acute p*pi/q, q <= qmax, whose cosine has degree at most 2."""
    out = set()
    for q in range(2, qmax + 1):
        for p in range(1, q):
            if math.gcd(p, q) != 1 or 2 * p >= q:
                continue
            a = AnglePi(p, q)
            if cos_degree(a) <= 2:
                out.add(a)
    return out


# -- vertex fills ------------------------------------------------------

THETA, THETA_C, PSI, PSI_C, RIGHT, STRAIGHT = "θ", "π−θ", "ψ", "π−ψ", "π/2", "π"
_SYMBOL_ORDER = [THETA, THETA_C, PSI, PSI_C, RIGHT, STRAIGHT]
# formal value of each symbol as (theta coefficient, psi coefficient, pi coefficient)
_FORMAL = {
    THETA: (1, 0, Fraction(0)),
    THETA_C: (-1, 0, Fraction(1)),
    PSI: (0, 1, Fraction(0)),
    PSI_C: (0, -1, Fraction(1)),
    RIGHT: (0, 0, Fraction(1, 2)),
    STRAIGHT: (0, 0, Fraction(1)),
}
_PARTNER = {THETA: THETA_C, THETA_C: THETA, PSI: PSI_C, PSI_C: PSI}


@dataclass(frozen=True)
class FillArrangement:
    parts: tuple[str, ...]
    cyclic: bool = True

    def value(self, theta: Fraction, psi: Fraction | None = None) -> Fraction:
        """Sum of the parts in units of pi for a concrete theta (and psi)."""
        tot = Fraction(0)
        for s in self.parts:
            kt, kp, kpi = _FORMAL[s]
            tot += kt * theta + kpi
            if kp:
                tot += kp * (psi if psi is not None else Fraction(1, 2))
        return tot

    def __str__(self):
        return "+".join(self.parts)


def canonical_parts(parts, cyclic: bool = True) -> tuple[str, ...]:
    idx = [_SYMBOL_ORDER.index(s) for s in parts]
    n = len(idx)
    cands = []
    for seq in (idx, idx[::-1]):
        if cyclic:
            cands.extend(tuple(seq[i:] + seq[:i]) for i in range(n))
        else:
            cands.append(tuple(seq))
    best = min(cands)
    return tuple(_SYMBOL_ORDER[i] for i in best)


def _alphabet(tile) -> list[str]:
    if tile.klass == "right":
        return [THETA, THETA_C, RIGHT, STRAIGHT]
    if tile.isosceles:
        return [THETA, THETA_C, STRAIGHT]
    return [THETA, THETA_C, PSI, PSI_C, STRAIGHT]


def _paired(parts, cyclic: bool) -> bool:
    """Every theta-type (psi-type) part sits next to its supplement, the two forming a straight angle."""
    n = len(parts)

    def scan(seq):
        i = 0
        while i < len(seq):
            s = seq[i]
            if s in _PARTNER:
                if i + 1 < len(seq) and seq[i + 1] == _PARTNER[s]:
                    i += 2
                    continue
                return False
            i += 1
        return True

    if not cyclic:
        return scan(list(parts))
    return any(scan(list(parts[i:]) + list(parts[:i])) for i in range(max(n, 1)))


def _arrangements_of(counts: dict[str, int], cyclic: bool) -> set[tuple[str, ...]]:
    items = [s for s, k in counts.items() for _ in range(k)]
    out = set()
    # distinct permutations of a small multiset
    def rec(prefix, remaining):
        if not remaining:
            out.add(canonical_parts(prefix, cyclic))
            return
        seen = set()
        for i, s in enumerate(remaining):
            if s in seen:
                continue
            seen.add(s)
            rec(prefix + [s], remaining[:i] + remaining[i + 1:])

    rec([], sorted(items, key=_SYMBOL_ORDER.index))
    return out


def _count_vectors(k: int, budget: int):
    if k == 0:
        yield ()
        return
    for c in range(budget + 1):
        for rest in _count_vectors(k - 1, budget - c):
            yield (c,) + rest


def angle_fill_arrangements(target, tile, theta_rational: bool, max_parts: int = 12) -> list[FillArrangement]:
    """All ways to fill the angle ``target`` with internal angles of ``tile``.

    ``target`` is a pair (theta coefficient, pi coefficient); 2*pi is (0, 2).
    At most one straight angle is used and it never stands alone.  With
    ``theta_rational`` false the sum must hold identically in theta (and in
    psi for a general trapezoid), and when the target itself is free of
    theta each theta-type part must sit next to its supplement.
    """
    t_theta, t_pi = int(target[0]), Fraction(target[1])
    alphabet = _alphabet(tile)
    cyclic = t_theta == 0 and t_pi == 2
    th = tile.theta.rational_tag
    ps = tile.psi.rational_tag
    formal = not theta_rational
    if not formal and th is None:
        raise ValueError("theta_rational requested but theta has no rational tag")

    def numeric(s: str) -> Fraction:
        kt, kp, kpi = _FORMAL[s]
        psi_val = ps.frac if ps is not None else Fraction(1, 2)
        return kt * th.frac + kp * psi_val + kpi

    results = set()
    if formal:
        target_num = None
    else:
        target_num = t_theta * th.frac + t_pi
    if not formal:
        smallest = min(numeric(s) for s in alphabet)
        max_parts = int(target_num / smallest)
    for counts in _count_vectors(len(alphabet), max_parts):
        total = sum(counts)
        if total == 0:
            continue
        cnt = dict(zip(alphabet, counts))
        if cnt.get(STRAIGHT, 0) > 1 or (cnt.get(STRAIGHT, 0) == 1 and total == 1):
            continue
        if formal:
            kt = sum(_FORMAL[s][0] * k for s, k in cnt.items())
            kp = sum(_FORMAL[s][1] * k for s, k in cnt.items())
            kpi = sum(_FORMAL[s][2] * k for s, k in cnt.items())
            if ps is not None and kp:
                kpi += kp * ps.frac
                kp = 0
            if kt != t_theta or kp != 0 or kpi != t_pi:
                continue
        else:
            if sum(numeric(s) * k for s, k in cnt.items()) != target_num:
                continue
        for arr in _arrangements_of({s: k for s, k in cnt.items() if k}, cyclic):
            if formal and t_theta == 0 and not _paired(arr, cyclic):
                continue
            results.add(arr)
    return [FillArrangement(p, cyclic) for p in sorted(results, key=lambda p: (len(p), [_SYMBOL_ORDER.index(s) for s in p]))]
