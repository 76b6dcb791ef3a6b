"""Exact rationals and quadratic irrationals with a certified order.

Rationals are plain :class:`fractions.Fraction`.  A :class:`QuadNum` is a
number ``a + b*sqrt(m)`` with rational ``a``, ``b`` and ``m >= 0``.  Every
comparison is decided algebraically; floats appear only in ``__float__``.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` (or pass through an int/Fraction) exactly.

    Decimal and float notation is rejected on purpose.
    """
    if isinstance(text, bool):
        raise DomainError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise DomainError(f"malformed rational {text!r}; expected 'p/q' or an integer")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def fmt_rational(q: Fraction | int) -> str:
    return str(Fraction(q))


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def sign_two(p: Fraction, q: Fraction, m: Fraction) -> int:
    """Exact sign of ``p + q*sqrt(m)``, ``m >= 0``."""
    sp, sq = _sign(p), _sign(q) if m else 0
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: the larger square wins
    return sp * _sign(p * p - q * q * m)


def sign_three(p: Fraction, q: Fraction, m: Fraction, t: Fraction, n: Fraction) -> int:
    """Exact sign of ``p + q*sqrt(m) + t*sqrt(n)``.

    The radical pair is resolved first, then compared against ``p`` by
    squaring; the cross term ``2qt*sqrt(mn)`` needs one more two-term sign.
    """
    if not m:
        q = Fraction(0)
    if not n:
        t = Fraction(0)
    sq, st = _sign(q), _sign(t)
    if sq == 0:
        return sign_two(p, t, n)
    if st == 0:
        return sign_two(p, q, m)
    # sign of A = q*sqrt(m) + t*sqrt(n)
    if sq == st:
        sa = sq
    else:
        sa = sq * _sign(q * q * m - t * t * n)
    sp = _sign(p)
    if sa == 0:
        return sp
    if sp == 0 or sp == sa:
        return sa
    # A^2 - p^2 = (q^2 m + t^2 n - p^2) + 2qt*sqrt(mn)
    diff = sign_two(q * q * m + t * t * n - p * p, 2 * q * t, m * n)
    if diff == 0:
        return 0
    return sa if diff > 0 else sp


Number = Union[int, Fraction, "QuadNum"]


class QuadNum:
    """``a + b*sqrt(m)`` in normalized form.

    Normalization folds perfect-square radicands into ``a`` and forces
    ``m = 0`` whenever ``b = 0``.  Radicands are otherwise kept as given, so
    two equal numbers may carry different ``(b, m)``; equality and hashing use
    the key ``(a, sign(b), b*b*m)`` which is representation independent.
    """

    __slots__ = ("a", "b", "m")

    def __init__(self, a=0, b=0, m=0):
        a, b, m = Fraction(a), Fraction(b), Fraction(m)
        if m < 0:
            raise DomainError(f"negative radicand {m}")
        if b and m:
            root = rational_sqrt(m)
            if root is not None:
                a, b, m = a + b * root, Fraction(0), Fraction(0)
        else:
            b, m = Fraction(0), Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("QuadNum is immutable")

    @classmethod
    def sqrt(cls, q) -> QuadNum:
        return cls(0, 1, q)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _key(self):
        return (self.a, _sign(self.b), self.b * self.b * self.m)

    def conjugate(self) -> QuadNum:
        return QuadNum(self.a, -self.b, self.m)

    # ---- arithmetic within one quadratic field ----------------------------

    def _common(self, other) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        """Return (a1, b1, a2, b2, m) with both operands over radicand m."""
        if isinstance(other, QuadNum):
            if other.b == 0:
                return self.a, self.b, other.a, Fraction(0), self.m
            if self.b == 0:
                return self.a, Fraction(0), other.a, other.b, other.m
            ratio = rational_sqrt(other.m / self.m)
            if ratio is None:
                raise DomainError(
                    f"incompatible radicands sqrt({self.m}) and sqrt({other.m})"
                )
            return self.a, self.b, other.a, other.b * ratio, self.m
        if isinstance(other, (int, Fraction)) or isinstance(other, _RationalABC):
            return self.a, self.b, Fraction(other), Fraction(0), self.m
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        c = self._common(other)
        if c is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2, m = c
        return QuadNum(a1 + a2, b1 + b2, m)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.m)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._common(other)
        if c is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2, m = c
        return QuadNum(a1 - a2, b1 - b2, m)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._common(other)
        if c is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2, m = c
        return QuadNum(a1 * a2 + b1 * b2 * m, a1 * b2 + a2 * b1, m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._common(other)
        if c is NotImplemented:
            return NotImplemented
        a1, b1, a2, b2, m = c
        norm = a2 * a2 - b2 * b2 * m
        if norm == 0:
            raise ZeroDivisionError("division by zero QuadNum")
        # (a1 + b1 r)(a2 - b2 r) / norm
        return QuadNum((a1 * a2 - b1 * b2 * m) / norm, (b1 * a2 - a1 * b2) / norm, m)

    def __rtruediv__(self, other):
        return QuadNum(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadNum(1)
        for _ in range(n):
            out = out * self
        return out

    # ---- order -------------------------------------------------------------

    def sign(self) -> int:
        return sign_two(self.a, self.b, self.m)

    def __eq__(self, other):
        if isinstance(other, QuadNum):
            return self._key() == other._key()
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash(self._key())

    def __lt__(self, other):
        return quad_cmp(self, other) is Order.LT

    def __le__(self, other):
        return quad_cmp(self, other) is not Order.GT

    def __gt__(self, other):
        return quad_cmp(self, other) is Order.GT

    def __ge__(self, other):
        return quad_cmp(self, other) is not Order.LT

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    def __floor__(self):
        return quad_floor(self)

    def __ceil__(self):
        return -quad_floor(-self)

    def __repr__(self):
        return f"QuadNum({self.a}, {self.b}, {self.m})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sgn = "-" if self.b < 0 else "+"
        coef = abs(self.b)
        rad = f"sqrt({self.m})"
        term = rad if coef == 1 else f"{coef}*{rad}"
        if self.a == 0:
            return f"-{term}" if self.b < 0 else term
        return f"{self.a} {sgn} {term}"


def quad_make(a, b, m) -> QuadNum:
    """Normalized ``a + b*sqrt(m)``; raises DomainError for ``m < 0``."""
    return QuadNum(a, b, m)


def as_quad(x) -> QuadNum:
    return x if isinstance(x, QuadNum) else QuadNum(x)


def quad_cmp(x, y) -> Order:
    """Exact comparison of two QuadNums (or rationals), any radicands."""
    x, y = as_quad(x), as_quad(y)
    s = sign_three(x.a - y.a, x.b, x.m, -y.b, y.m)
    return Order(s)


def quad_floor(x) -> int:
    """Largest integer ``<= x`` by exact comparison and bisection."""
    x = as_quad(x)
    if x.b == 0:
        return math.floor(x.a)
    # integer bracket around a + b*sqrt(m) from integer square roots
    n, d = x.m.numerator, x.m.denominator
    root_lo = Fraction(math.isqrt(n * d), d)  # sqrt(m) - root_lo < 1/d
    spread = abs(x.b) + 1
    centre = x.a + x.b * root_lo
    lo = math.floor(centre - spread) - 1
    hi = math.ceil(centre + spread) + 1
    # invariant: lo <= x < hi
    while quad_cmp(x, lo) is Order.LT:
        lo -= max(1, hi - lo)
    while quad_cmp(x, hi) is not Order.LT:
        hi += max(1, hi - lo)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if quad_cmp(x, mid) is Order.LT:
            hi = mid
        else:
            lo = mid
    return lo


def quad_ceil(x) -> int:
    return -quad_floor(-as_quad(x))
