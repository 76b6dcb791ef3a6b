"""Numerical walls in the (beta, alpha) half-plane.

Walls are stored by squared radius so every wall built from rational data
stays rational; crossing tests compare squares exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .chern import ChernVector, discriminant, twisted_ch
from .numerics import DomainError, QuadNum, as_quad, fmt_rational, parse_rational
from .tilt import z_bridgeland

VERTICAL = "vertical"
SEMICIRCLE = "semicircle"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Wall:
    kind: str
    beta: Optional[Fraction] = None  # vertical walls only
    center: Optional[Fraction] = None
    radius_sq: Optional[Fraction] = None

    @classmethod
    def vertical(cls, beta) -> Wall:
        return cls(VERTICAL, beta=Fraction(beta))

    @classmethod
    def semicircle(cls, center, radius_sq) -> Wall:
        radius_sq = Fraction(radius_sq)
        if radius_sq <= 0:
            return cls.degenerate()
        return cls(SEMICIRCLE, center=Fraction(center), radius_sq=radius_sq)

    @classmethod
    def degenerate(cls) -> Wall:
        return cls(DEGENERATE)

    @property
    def is_semicircle(self) -> bool:
        return self.kind == SEMICIRCLE

    def endpoints(self) -> tuple[QuadNum, QuadNum]:
        """Exact feet ``center -/+ radius`` of a semicircle."""
        if not self.is_semicircle:
            raise DomainError(f"{self.kind} wall has no endpoints")
        return QuadNum(self.center, -1, self.radius_sq), QuadNum(self.center, 1, self.radius_sq)

    def contains_point(self, beta, alpha) -> bool:
        """Strictly inside the semidisk bounded by the wall and the beta-axis."""
        if not self.is_semicircle:
            return False
        return (beta - self.center) ** 2 + alpha * alpha < self.radius_sq

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == VERTICAL:
            out["beta"] = fmt_rational(self.beta)
        elif self.kind == SEMICIRCLE:
            out["center"] = fmt_rational(self.center)
            out["radius_sq"] = fmt_rational(self.radius_sq)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Wall:
        kind = obj["kind"]
        if kind == VERTICAL:
            return cls.vertical(parse_rational(obj["beta"]))
        if kind == SEMICIRCLE:
            return cls.semicircle(parse_rational(obj["center"]), parse_rational(obj["radius_sq"]))
        if kind == DEGENERATE:
            return cls.degenerate()
        raise DomainError(f"unknown wall kind {kind!r}")

    def __str__(self):
        if self.kind == VERTICAL:
            return f"Vertical(beta={self.beta})"
        if self.kind == SEMICIRCLE:
            return f"Semicircle(center={self.center}, radius_sq={self.radius_sq})"
        return "Degenerate"


def _rcd(v) -> tuple[Fraction, Fraction, Fraction]:
    r, c, d, _ = twisted_ch(v, 0)
    return Fraction(r), Fraction(c), Fraction(d)


def numerical_wall(v, w) -> Wall:
    """Locus ``nu(v) = nu(w)``.

    Expanding the equality gives ``X - beta Y + K (beta^2 + alpha^2) / 2 = 0``
    with ``K = c_v r_w - c_w r_v``, ``Y = d_v r_w - d_w r_v`` and
    ``X = d_v c_w - d_w c_v``.
    """
    rv, cv, dv = _rcd(v)
    rw, cw, dw = _rcd(w)
    k = cv * rw - cw * rv
    y = dv * rw - dw * rv
    x = dv * cw - dw * cv
    if k == 0:
        if y == 0:
            return Wall.degenerate()
        return Wall.vertical(x / y)
    center = y / k
    return Wall.semicircle(center, center * center - 2 * x / k)


def wall_crosses_ray(wall: Wall, beta0) -> bool:
    """Whether the wall meets ``beta = beta0`` at some ``alpha > 0``."""
    if wall.kind == VERTICAL:
        return as_quad(beta0) == wall.beta
    if wall.kind == SEMICIRCLE:
        offset = as_quad(beta0) - wall.center
        return offset * offset < wall.radius_sq
    return False


def q_zero_wall(v: ChernVector) -> Wall:
    """The semicircle bounding the region where ``q_bmt(v) < 0``."""
    r, c, d, e = v
    if discriminant((r, c, d)) <= 0:
        raise DomainError("q_zero_wall needs a positive discriminant")
    return numerical_wall((r, c, d), (5 * c, 10 * d, 15 * e))


def radius_bound_sub(v, s: int) -> Fraction:
    """Upper bound on the squared radius of a wall induced by a rank ``s`` subobject."""
    r, c, d = _rcd(v)
    if not s > r >= 0:
        raise DomainError(f"need s > r >= 0, got s={s}, r={r}")
    return discriminant((r, c, d)) / (4 * 5 * s * 5 * (s - r))


class BiPoly:
    """Polynomial in ``(beta, alpha)`` with exact rational coefficients.

    Stored as ``{(i, j): coeff}`` for ``beta^i alpha^j``; zero terms are dropped.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, x) -> BiPoly:
        return cls({(0, 0): x})

    @classmethod
    def beta(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def alpha(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @staticmethod
    def _lift(x) -> BiPoly:
        return x if isinstance(x, BiPoly) else BiPoly.const(x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BiPoly):
            raise TypeError("only division by scalars is supported")
        return BiPoly({k: v / other for k, v in self.terms.items()})

    def __eq__(self, other):
        return self.terms == self._lift(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __call__(self, beta, alpha):
        total = Fraction(0)
        for (i, j), coef in self.terms.items():
            total = total + coef * beta**i * alpha**j
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), coef in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                p for p in (
                    f"beta^{i}" if i > 1 else ("beta" if i == 1 else ""),
                    f"alpha^{j}" if j > 1 else ("alpha" if j == 1 else ""),
                ) if p
            )
            parts.append(f"({coef})*{mono}" if mono else f"({coef})")
        return " + ".join(parts)


def dependence_curve(a: ChernVector, b: ChernVector, s) -> BiPoly:
    """``Im(Z(a) * conj(Z(b)))`` as a polynomial; zero exactly where the charges are collinear."""
    beta, alpha = BiPoly.beta(), BiPoly.alpha()
    s = Fraction(s)
    re_a, im_a = z_bridgeland(a, beta, alpha, s)
    re_b, im_b = z_bridgeland(b, beta, alpha, s)
    return im_a * re_b - re_a * im_b
