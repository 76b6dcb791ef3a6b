"""Chern characters on the quintic del Pezzo threefold X5.

A character is stored as the coefficients ``(r, c, d, e)`` of
``1, H, H^2, H^3``.  Intersection numbers are reinstated with ``H^3 = 5``
only inside slopes, discriminants and Euler characteristics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .numerics import DomainError, fmt_rational, parse_rational


class X5Constants(NamedTuple):
    degree: int  # H^3
    # Todd class coefficients of 1, H, H^2, H^3
    td: tuple[Fraction, Fraction, Fraction, Fraction]


X5 = X5Constants(
    degree=5,
    td=(Fraction(1), Fraction(1), Fraction(8, 15), Fraction(1, 5)),
)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else parse_rational(x)


@dataclass(frozen=True)
class ChernVec2:
    """Truncated character ``ch_{<=2} = (r, c, d)`` in the lattice Z^2 + (1/10)Z."""

    r: int
    c: int
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d", _frac(self.d))
        if not isinstance(self.r, int) or not isinstance(self.c, int):
            raise DomainError("r and c must be integers")
        if (10 * self.d).denominator != 1:
            raise DomainError(f"ch2 coefficient {self.d} is not in (1/10)Z")

    def __iter__(self):
        return iter((self.r, self.c, self.d))

    def __getitem__(self, i):
        return (self.r, self.c, self.d)[i]

    def __len__(self):
        return 3

    def __add__(self, other: ChernVec2) -> ChernVec2:
        return ChernVec2(self.r + other.r, self.c + other.c, self.d + other.d)

    def __sub__(self, other: ChernVec2) -> ChernVec2:
        return ChernVec2(self.r - other.r, self.c - other.c, self.d - other.d)

    def __neg__(self) -> ChernVec2:
        return ChernVec2(-self.r, -self.c, -self.d)

    def scale(self, n: int) -> ChernVec2:
        return ChernVec2(n * self.r, n * self.c, n * self.d)

    def to_json(self) -> dict:
        return {"r": self.r, "c": self.c, "d": fmt_rational(self.d)}

    @classmethod
    def from_json(cls, obj: dict) -> ChernVec2:
        return cls(int(obj["r"]), int(obj["c"]), parse_rational(obj["d"]))

    def __str__(self):
        return f"({self.r}, {self.c}, {self.d})"


@dataclass(frozen=True)
class ChernVector:
    """Full character ``(r, c, d, e)``.

    The default constructor enforces integrality of ``c2`` and ``c3``;
    :meth:`unchecked` skips it for intermediate arithmetic.
    """

    r: int
    c: int
    d: Fraction
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d", _frac(self.d))
        object.__setattr__(self, "e", _frac(self.e))
        if getattr(self, "_skip_check", False):
            return
        if not isinstance(self.r, int) or not isinstance(self.c, int):
            raise DomainError("r and c must be integers")
        if not self.is_lattice():
            raise DomainError(f"{self} violates Chern integrality (c2, c3 must be integers)")

    @classmethod
    def unchecked(cls, r, c, d, e) -> ChernVector:
        obj = object.__new__(cls)
        object.__setattr__(obj, "r", r)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "d", Fraction(d))
        object.__setattr__(obj, "e", Fraction(e))
        return obj

    def _chern_classes_raw(self) -> tuple[Fraction, Fraction]:
        c = Fraction(self.c)
        c2 = 5 * (c * c / 2 - self.d)
        c3 = 10 * (self.e - c**3 / 6 + c * c2 / 10)
        return c2, c3

    def is_lattice(self) -> bool:
        if not isinstance(self.r, int) or not isinstance(self.c, int):
            return False
        c2, c3 = self._chern_classes_raw()
        return c2.denominator == 1 and c3.denominator == 1

    @property
    def truncation(self) -> ChernVec2:
        return ChernVec2(self.r, self.c, self.d)

    def __iter__(self):
        return iter((self.r, self.c, self.d, self.e))

    def __getitem__(self, i):
        return (self.r, self.c, self.d, self.e)[i]

    def __len__(self):
        return 4

    def __add__(self, other: ChernVector) -> ChernVector:
        return ChernVector.unchecked(
            self.r + other.r, self.c + other.c, self.d + other.d, self.e + other.e
        )

    def __sub__(self, other: ChernVector) -> ChernVector:
        return self + (-other)

    def __neg__(self) -> ChernVector:
        return ChernVector.unchecked(-self.r, -self.c, -self.d, -self.e)

    def scale(self, n: int) -> ChernVector:
        return ChernVector.unchecked(n * self.r, n * self.c, n * self.d, n * self.e)

    def shift(self, n: int = 1) -> ChernVector:
        """Character of ``E[n]``."""
        return self if n % 2 == 0 else -self

    def checked(self) -> ChernVector:
        return ChernVector(self.r, self.c, self.d, self.e)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "c": self.c,
            "d": fmt_rational(self.d),
            "e": fmt_rational(self.e),
        }

    @classmethod
    def from_json(cls, obj: dict) -> ChernVector:
        return cls(int(obj["r"]), int(obj["c"]), parse_rational(obj["d"]), parse_rational(obj["e"]))

    def __str__(self):
        return f"({self.r}, {self.c}, {self.d}, {self.e})"


def _trunc(v) -> tuple:
    if isinstance(v, (ChernVector, ChernVec2)):
        return v.r, v.c, v.d
    r, c, d = v[:3]
    return r, c, Fraction(d)


def from_chern_classes(r: int, c1: int, c2: int, c3: int) -> ChernVector:
    c1f = Fraction(c1)
    return ChernVector(
        r,
        c1,
        c1f * c1f / 2 - Fraction(c2, 5),
        c1f**3 / 6 - c1f * c2 / 10 + Fraction(c3, 10),
    )


def to_chern_classes(v: ChernVector) -> tuple[int, int, int, int]:
    c2, c3 = v._chern_classes_raw()
    if c2.denominator != 1 or c3.denominator != 1:
        raise DomainError(f"{v} has non-integral Chern classes")
    return v.r, v.c, int(c2), int(c3)


def twist(v: ChernVector, n: int) -> ChernVector:
    """``ch(E(n)) = e^{nH} ch(E)``."""
    r, c, d, e = v
    n = Fraction(n)
    out = ChernVector.unchecked(
        r,
        c + int(n) * r,
        d + n * c + n * n * r / 2,
        e + n * d + n * n * c / 2 + n**3 * r / 6,
    )
    return out.checked() if v.is_lattice() else out


def twisted_ch(v, beta):
    """Components of ``e^{-beta H} ch`` as a 4-tuple.

    ``beta`` may be a Fraction or a QuadNum; ``v`` may be a ChernVector or a
    ``(r, c, d[, e])`` tuple (missing ``e`` is taken as 0).
    """
    if isinstance(v, ChernVector):
        r, c, d, e = v
    elif isinstance(v, ChernVec2):
        r, c, d, e = v.r, v.c, v.d, Fraction(0)
    else:
        r, c, d = v[:3]
        e = v[3] if len(v) > 3 else Fraction(0)
    b = Fraction(beta) if isinstance(beta, int) else beta
    return (
        r,
        c - b * r,
        d - b * c + b * b * r / 2,
        e - b * d + b * b * c / 2 - b * b * b * r / 6,
    )


def dual_shift(v: ChernVector) -> ChernVector:
    """Character of ``RHom(E, O)[1]`` when no zero-dimensional correction occurs.

    The true dual object may differ by a point-supported sheaf, which only
    lowers ``e``; callers treat the result's ``e`` as an upper bound.
    """
    out = ChernVector.unchecked(-v.r, v.c, -v.d, v.e)
    return out.checked() if v.is_lattice() else out


def euler_char(v: ChernVector) -> Fraction:
    """Hirzebruch-Riemann-Roch: ``chi = r + 8c/3 + 5d + 5e`` on X5."""
    r, c, d, e = v
    h3 = X5.degree
    td = X5.td
    return h3 * (e * td[0] + d * td[1] + c * td[2] + r * td[3])


def euler_pairing(a: ChernVector, b: ChernVector) -> Fraction:
    """``chi(A, B)`` for a line bundle ``A = O(n)``: ``chi(B(-n))``."""
    if a.r != 1 or a.d != Fraction(a.c * a.c, 2) or a.e != Fraction(a.c**3, 6):
        raise DomainError("euler_pairing supports only line-bundle first arguments")
    return euler_char(twist(b, -a.c))


def slope(v):
    """``mu = c/r``; ``+inf`` in rank zero."""
    r, c, _ = _trunc(v)
    if r == 0:
        return float("inf")
    return Fraction(c, r)


def discriminant(v) -> Fraction:
    """Normalized discriminant ``25 (c^2 - 2 r d)``."""
    r, c, d = _trunc(v)
    return X5.degree**2 * (c * c - 2 * r * d)


_STD_RE = re.compile(r"^(O|O_L|O_S)\((.*)\)$")


def standard_object(name: str, *params) -> ChernVector:
    """Characters of ``O(n)``, ``U``, ``Q(-1)``, ``O_L(m)`` and ``O_S(D)``.

    Parameters may be embedded in the name (``"O(-1)"``, ``"O_L(1)"``) or
    passed positionally; ``O_S`` takes a :class:`~x5tilt.del_pezzo.DivisorClass`
    or ``(a, b1, b2, b3, b4)``.
    """
    name = name.strip()
    if name == "U":
        return ChernVector(2, -1, Fraction(1, 10), Fraction(1, 30))
    if name in ("Q(-1)", "Q"):
        return ChernVector(3, -2, Fraction(2, 5), Fraction(1, 15))
    m = _STD_RE.match(name)
    if m:
        kind, inner = m.group(1), m.group(2).strip()
        args = list(params)
        if inner and kind != "O_S":
            args = [int(inner)]
        if kind == "O":
            if not args:
                raise DomainError("O(n) needs an integer twist")
            n = Fraction(int(args[0]))
            return ChernVector(1, int(n), n * n / 2, n**3 / 6)
        if kind == "O_L":
            if not args:
                raise DomainError("O_L(m) needs an integer degree")
            return ChernVector(0, 0, Fraction(1, 5), Fraction(int(args[0]), 5))
        if kind == "O_S":
            from .del_pezzo import DivisorClass, pushforward_ch

            if inner:
                args = [int(t) for t in inner.split(",")]
            if len(args) == 1 and isinstance(args[0], DivisorClass):
                D = args[0]
            elif len(args) == 5:
                D = DivisorClass(int(args[0]), tuple(int(t) for t in args[1:]))
            else:
                raise DomainError("O_S(D) needs a DivisorClass or (a, b1, b2, b3, b4)")
            return pushforward_ch(D)
    raise DomainError(f"unknown standard object {name!r}")


# Basis for the heart generated by O(-1)[3], Q(-1)[2], U[1], O.
_HEART_BASIS = (
    ("O(-1)[3]", standard_object("O(-1)").shift(3)),
    ("Q(-1)[2]", standard_object("Q(-1)").shift(2)),
    ("U[1]", standard_object("U").shift(1)),
    ("O", standard_object("O(0)")),
)


def _solve4(cols: list[tuple[Fraction, ...]], rhs: tuple[Fraction, ...]) -> list[Fraction]:
    n = len(rhs)
    mat = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            raise DomainError("singular basis")
        mat[col], mat[piv] = mat[piv], mat[col]
        p = mat[col][col]
        mat[col] = [x / p for x in mat[col]]
        for i in range(n):
            if i != col and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[col])]
    return [mat[i][n] for i in range(n)]


def _det4(cols) -> Fraction:
    rows = [[Fraction(cols[j][i]) for j in range(4)] for i in range(4)]
    det = Fraction(1)
    for col in range(4):
        piv = next((i for i in range(col, 4) if rows[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for i in range(col + 1, 4):
            f = rows[i][col] / rows[col][col]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return det


assert _det4([tuple(v) for _, v in _HEART_BASIS]) != 0, "heart basis is degenerate"


class HeartDecomposition(NamedTuple):
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    feasible: bool

    def to_json(self) -> dict:
        return {
            "a": fmt_rational(self.a),
            "b": fmt_rational(self.b),
            "c": fmt_rational(self.c),
            "d": fmt_rational(self.d),
            "feasible": self.feasible,
        }


def heart_decomposition(v: ChernVector) -> HeartDecomposition:
    """Coefficients of ``v`` in the basis ``O(-1)[3], Q(-1)[2], U[1], O``.

    Feasible means every coefficient is a non-negative integer, i.e. ``v``
    could be the class of a complex ``O(-1)^a -> Q(-1)^b -> U^c -> O^d``.
    """
    coeffs = _solve4([tuple(b) for _, b in _HEART_BASIS], tuple(v))
    feasible = all(x.denominator == 1 and x >= 0 for x in coeffs)
    return HeartDecomposition(*coeffs, feasible)
