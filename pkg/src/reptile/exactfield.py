"""Exact arithmetic in Q and Q(sqrt d).

A QuadVal stores (a + b*sqrt(d)) / c with integers a, b, c, c > 0 and
gcd(a, b, c) = 1.  The rational and radical parts are exposed as
Fractions through ``u`` and ``v``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction


class FieldError(ValueError):
    pass


class RadicandMismatch(FieldError):
    pass


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign_ab(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for integers a, b."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    t = a * a - b * b * d
    s = (t > 0) - (t < 0)
    return s if a > 0 else -s


class QuadVal:
    """Immutable element u + v*sqrt(d) of a real quadratic field."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, u=0, v=0, d: int = 1):
        u = Fraction(u)
        v = Fraction(v)
        if d < 1 or not is_squarefree(d):
            raise FieldError(f"radicand {d} is not a positive square-free integer")
        if d == 1:
            u, v = u + v, Fraction(0)
        c = u.denominator * v.denominator // math.gcd(u.denominator, v.denominator)
        a = u.numerator * (c // u.denominator)
        b = v.numerator * (c // v.denominator)
        self._set(a, b, c, d)

    def _set(self, a: int, b: int, c: int, d: int) -> None:
        g = math.gcd(a, b, c)
        if g != 1:
            a //= g
            b //= g
            c //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int) -> "QuadVal":
        x = object.__new__(cls)
        if c < 0:
            a, b, c = -a, -b, -c
        if d == 1 and b:
            a, b = a + b, 0
        x._set(a, b, c, d)
        return x

    def __setattr__(self, name, value):
        raise AttributeError("QuadVal is immutable")

    @property
    def u(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def v(self) -> Fraction:
        return Fraction(self.b, self.c)

    def is_rational(self) -> bool:
        return self.b == 0

    # -- coercion --------------------------------------------------------
    def _coerce(self, other) -> "QuadVal":
        if isinstance(other, QuadVal):
            return other
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return QuadVal._raw(f.numerator, 0, f.denominator, self.d)
        return NotImplemented

    def _common_d(self, y: "QuadVal") -> int:
        if self.d == y.d:
            return self.d
        if self.b and y.b:
            raise RadicandMismatch(f"sqrt({self.d}) and sqrt({y.d}) in one expression")
        if self.b:
            return self.d
        if y.b:
            return y.d
        return self.d if self.d != 1 else y.d

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        d = self._common_d(y)
        return QuadVal._raw(self.a * y.c + y.a * self.c, self.b * y.c + y.b * self.c, self.c * y.c, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadVal._raw(-self.a, -self.b, self.c, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return y + (-self)

    def __mul__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        d = self._common_d(y)
        return QuadVal._raw(
            self.a * y.a + d * self.b * y.b,
            self.a * y.b + self.b * y.a,
            self.c * y.c,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadVal":
        # (a + b r)/c -> c (a - b r) / (a^2 - b^2 d)
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            raise ZeroDivisionError("QuadVal division by zero")
        return QuadVal._raw(self.c * self.a, -self.c * self.b, n, self.d)

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        self._common_d(y)
        return self * y.inverse()

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return y * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        r = QuadVal._raw(1, 0, 1, self.d)
        x = self
        while k:
            if k & 1:
                r = r * x
            x = x * x
            k >>= 1
        return r

    def conjugate(self) -> "QuadVal":
        return QuadVal._raw(self.a, -self.b, self.c, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.d, self.c * self.c)

    # -- order -----------------------------------------------------------
    def sign(self) -> int:
        return _sign_ab(self.a, self.b, self.d)

    def _cmp(self, other) -> int:
        y = self._coerce(other)
        if y is NotImplemented:
            raise TypeError(f"cannot compare QuadVal with {type(other).__name__}")
        return (self - y).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        y = self._coerce(other) if not isinstance(other, QuadVal) else other
        if y is NotImplemented:
            return NotImplemented
        if self.a != y.a or self.b != y.b or self.c != y.c:
            return False
        return self.b == 0 or self.d == y.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        """Exact floor of the real value."""
        # value = (a + b sqrt d) / c; floor(b sqrt d) via isqrt
        if self.b == 0:
            return self.a // self.c
        m = math.isqrt(self.b * self.b * self.d)
        if self.b > 0:
            lo = m
        else:
            lo = -m if m * m == self.b * self.b * self.d else -m - 1
        # lo <= b sqrt d < lo + 1, and equality only when exact
        k = (self.a + lo) // self.c
        # refine: the true value may exceed the estimate by < 1/c + ...
        while QuadVal._raw(self.a - (k + 1) * self.c, self.b, self.c, self.d).sign() >= 0:
            k += 1
        while QuadVal._raw(self.a - k * self.c, self.b, self.c, self.d).sign() < 0:
            k -= 1
        return k

    def __float__(self):
        return float(self.a) / self.c + float(self.b) / self.c * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadVal({format_quadval(self)})"

    def __str__(self):
        return format_quadval(self, compact=True)

    def __reduce__(self):
        return (QuadVal._raw, (self.a, self.b, self.c, self.d))


def qv(x, d: int = 1) -> QuadVal:
    if isinstance(x, QuadVal):
        return x
    return QuadVal(x, 0, d)


def sqrt_of(d: int, coef=1) -> QuadVal:
    return QuadVal(0, coef, d)


def qv_sign(x: QuadVal) -> int:
    return x.sign()


def floor_div(y: QuadVal, x: QuadVal) -> int:
    """floor(y / x) computed exactly."""
    return (qv(y) / qv(x)).floor()


@dataclass(frozen=True)
class QxCoords:
    c1: Fraction
    cx: Fraction


def qx_decompose(y: QuadVal, x: QuadVal) -> QxCoords:
    """Write y = c1 + cx*x with rational c1, cx (x must be irrational)."""
    x = qv(x)
    y = qv(y)
    if x.b == 0:
        raise FieldError("basis {1, x} is degenerate: x is rational")
    if y.b and y.d != x.d:
        raise RadicandMismatch(f"sqrt({y.d}) and sqrt({x.d}) in one expression")
    cx = y.v / x.v
    c1 = y.u - cx * x.u
    return QxCoords(c1, cx)


# -- literals ------------------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_TERM = re.compile(
    r"([+-]?)(\d+(?:/\d+)?)?(?:\*?sqrt\((\d+)\))?"
)


def parse_rat(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(_RAT, s):
        raise FieldError(f"bad rational literal {s!r}")
    return Fraction(s)


def parse_quadval(s: str, d: int | None = None) -> QuadVal:
    """Parse ``p/q``, ``p/q+r/s*sqrt(d)``, ``sqrt(3)``, ``-1/2*sqrt(2)`` and so on."""
    text = s.replace(" ", "")
    if not text:
        raise FieldError("empty number literal")
    pos = 0
    u = Fraction(0)
    v = Fraction(0)
    rad = None
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise FieldError(f"bad number literal {s!r}")
        sg, num, r = m.groups()
        if num is None and r is None:
            raise FieldError(f"bad number literal {s!r}")
        val = Fraction(num) if num is not None else Fraction(1)
        if sg == "-":
            val = -val
        if r is None:
            u += val
        else:
            r = int(r)
            if rad is not None and r != rad:
                raise RadicandMismatch(f"mixed radicands in {s!r}")
            rad = r
            v += val
        pos = m.end()
    if rad is None:
        return QuadVal(u, 0, d or 1)
    if d is not None and d != rad and v != 0 and rad != 1:
        raise RadicandMismatch(f"literal uses sqrt({rad}) but context is sqrt({d})")
    return QuadVal(u, v, rad)


def format_quadval(x: QuadVal, compact: bool = False, d: int | None = None) -> str:
    """Canonical text ``p/q+r/s*sqrt(d)``; ``compact`` drops zero and unit parts.

    ``d`` names the radicand to print for rational values.
    """
    u, v = x.u, x.v
    if not compact:
        sg = "-" if v < 0 else "+"
        rad = x.d if (x.b or d is None) else d
        return f"{u.numerator}/{u.denominator}{sg}{abs(v.numerator)}/{v.denominator}*sqrt({rad})"
    parts = []
    if u != 0 or v == 0:
        parts.append(str(u))
    if v != 0:
        av = abs(v)
        coef = "" if av == 1 else f"{av}*"
        sg = "-" if v < 0 else ("+" if parts else "")
        parts.append(f"{sg}{coef}sqrt({x.d})")
    return "".join(parts)
