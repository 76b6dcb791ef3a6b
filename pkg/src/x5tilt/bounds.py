"""Upper bounds on the ``H^3`` coefficient ``e`` of a Chern character.

Each route returns a :class:`BoundResult` whose ``e_max`` is already rounded
down onto the lattice of admissible ``e`` for the given ``(r, c, d)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .chern import ChernVector, discriminant, euler_char, to_chern_classes
from .del_pezzo import extension_ch, optimize_divisor
from .destab import minimal_ch1_check
from .numerics import DomainError, QuadNum, fmt_rational, quad_cmp, Order
from .walls import q_zero_wall

CHI = "chi"
Q_FORM = "q_form"
TRIVIAL = "trivial"
DUAL = "dual"
CHAIN = "chain"


@dataclass(frozen=True)
class BoundResult:
    e_max: Fraction
    route: str
    assumptions: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "e_max": fmt_rational(self.e_max),
            "route": self.route,
            "assumptions": list(self.assumptions),
        }


def _rcd(v2) -> tuple[int, int, Fraction]:
    r, c, d = list(v2)[:3]
    return int(r), int(c), Fraction(d)


def lattice_base(v2) -> Fraction:
    """``c^3/6 - c c2/10``: the admissible ``e`` form this coset of ``(1/10)Z``."""
    r, c, d = _rcd(v2)
    c2 = 5 * (Fraction(c * c, 2) - d)
    if c2.denominator != 1:
        raise DomainError(f"({r}, {c}, {d}) has non-integral c2")
    return Fraction(c**3, 6) - c * c2 / 10


def lattice_e_floor(v2, e_bound) -> Fraction:
    """Largest admissible ``e <= e_bound``."""
    base = lattice_base(v2)
    return base + Fraction(math.floor((Fraction(e_bound) - base) * 10), 10)


def chi_bound_e(v2, chi_max=0, assumptions=()) -> BoundResult:
    """Solve ``chi(r, c, d, e) <= chi_max`` for ``e``."""
    r, c, d = _rcd(v2)
    chi_at_zero = euler_char(ChernVector.unchecked(r, c, d, 0))
    bound = (Fraction(chi_max) - chi_at_zero) / 5
    return BoundResult(lattice_e_floor((r, c, d), bound), CHI, tuple(assumptions))


def q_bound_raw(v2, beta0) -> Fraction:
    """Real bound from ``q_bmt >= 0`` at ``(beta0, alpha = 0)``."""
    r, c, d = _rcd(v2)
    b = Fraction(beta0)
    cb = c - b * r
    db = d - b * c + b * b * r / 2
    if cb <= 0:
        raise DomainError("q-form bound needs ch1 positive at beta0")
    # e^beta = e + shift
    shift = -b * d + b * b * c / 2 - b**3 * r / 6
    return 4 * db * db / (6 * cb) - shift


def q_bound_e(v2, beta0, assumptions=()) -> BoundResult:
    if not minimal_ch1_check(v2, beta0):
        raise DomainError(f"ch1 at beta={beta0} is not minimal; a wall may cross this ray")
    bound = q_bound_raw(v2, beta0)
    return BoundResult(lattice_e_floor(v2, bound), Q_FORM, tuple(assumptions))


def trivial_class_e_bound(n: int, m: int) -> Fraction:
    """``ch3(O(n)^m)``: the bound for classes agreeing with it up to ``ch2``."""
    if m < 1:
        raise DomainError("multiplicity must be positive")
    return Fraction(m * n**3, 6)


def dual_class_e_bound(n: int, m: int) -> Fraction:
    """``ch3(O(n)^m[1])`` for classes with ``ch_{<=2} = -ch_{<=2}(O(n)^m)``."""
    if m < 1:
        raise DomainError("multiplicity must be positive")
    return -Fraction(m * n**3, 6)


def torsion_rank0_bound(d) -> Fraction:
    """Bound for ``ch = H + d H^2 + e H^3``, unrounded."""
    d = Fraction(d)
    return Fraction(1, 24) + d * d / 2


def rank_one_neg_bound(d) -> Fraction:
    """Bound for ``ch = 1 - d H^2 + e H^3``, ``d >= 0``."""
    d = Fraction(d)
    if d < 0 or (5 * d).denominator != 1:
        raise DomainError(f"d must be a non-negative multiple of 1/5, got {d}")
    if d >= 1:
        return d * (d + 1) / 2
    return q_bound_e((1, 0, -d), -1).e_max


def our_bound_expression(k: int) -> Fraction:
    k = Fraction(k)
    return (
        -Fraction(9, 800) * k
        - Fraction(11, 2000)
        - 147 / (8000 - 20000 * k)
        + 2401 / (-2 * 10**6 * k**3 + 24 * 10**5 * k**2 - 96 * 10**4 * k + 128000)
    )


def our_bound_class(k: int) -> ChernVector:
    return ChernVector(2, -1, k + Fraction(1, 10), Fraction(15 * k * k - 27 * k + 1, 30))


class OurBoundReport(NamedTuple):
    k: int
    ratio_lower_bound: Fraction
    passes: bool  # lower bound exceeds 1/300
    radius_sq: Fraction
    discriminant: Fraction
    actual_ratio: QuadNum  # rho_Q / D
    actual_exceeds_threshold: bool
    actual_ge_lower_bound: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ratio_lower_bound": fmt_rational(self.ratio_lower_bound),
            "pass": self.passes,
            "radius_sq": fmt_rational(self.radius_sq),
            "discriminant": fmt_rational(self.discriminant),
            "actual_ratio": str(self.actual_ratio),
            "actual_exceeds_threshold": self.actual_exceeds_threshold,
            "actual_ge_lower_bound": self.actual_ge_lower_bound,
        }


def our_bound_check(k: int) -> OurBoundReport:
    """Evaluate the rational lower bound and the actual ``rho_Q / D`` of the composite class."""
    if k > -2:
        raise DomainError("k must be at most -2")
    threshold = Fraction(1, 300)
    lower = our_bound_expression(k)
    v = our_bound_class(k)
    # sanity: the class is the optimal extension at C = 5k - 2
    assert extension_ch("c1_neg1", optimize_divisor(5 * k - 2).argmax[0]) == v
    wall = q_zero_wall(v)
    disc = discriminant(v)
    ratio = QuadNum(0, 1, wall.radius_sq) / disc
    return OurBoundReport(
        k=k,
        ratio_lower_bound=lower,
        passes=lower > threshold,
        radius_sq=wall.radius_sq,
        discriminant=disc,
        actual_ratio=ratio,
        actual_exceeds_threshold=quad_cmp(ratio, threshold) is Order.GT,
        actual_ge_lower_bound=quad_cmp(ratio, lower) is not Order.LT,
    )


class SchmidtReport(NamedTuple):
    k: int
    left: Fraction
    right: Fraction
    difference: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "left": fmt_rational(self.left),
            "right": fmt_rational(self.right),
            "difference": fmt_rational(self.difference),
        }


def schmidt_constant_check(k: int) -> SchmidtReport:
    """Both sides of the rank-one constant identity at ``ch2 = k + 1/10``; reported, not asserted."""
    t = k + Fraction(1, 10)
    left = t * t / 2 + t + Fraction(5, 24)
    right = Fraction(15 * k * k - 27 * k + 1, 30) + Fraction(2, 25)
    return SchmidtReport(k, left, right, left - right)


def e_to_c3(v: ChernVector) -> int:
    return to_chern_classes(v)[3]
