"""Line bundles on the quintic del Pezzo surface S inside X5.

S is the blow-up of the plane in four points; a divisor is
``a H' + sum b_i E_i``.  Pushing ``O_S(D)`` forward to X5 gives a rank-zero
class whose ``e`` depends on ``a^2 - sum b_i^2`` and ``C = 3a + sum b_i``.
For fixed ``C`` the maximum of ``e`` is attained by balancing the ``b_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .chern import ChernVector, standard_object
from .numerics import DomainError, fmt_rational


class SurfaceIntersections(NamedTuple):
    line_sq: int  # H'^2
    exceptional_sq: int  # E_i^2
    anticanonical: tuple[int, tuple[int, int, int, int]]  # -K_S = 3H' - sum E_i


S5 = SurfaceIntersections(1, -1, (3, (-1, -1, -1, -1)))


@dataclass(frozen=True, order=True)
class DivisorClass:
    a: int
    b: tuple[int, int, int, int]

    def __post_init__(self):
        b = tuple(int(t) for t in self.b)
        if len(b) != 4:
            raise DomainError("a divisor class needs four exceptional coefficients")
        object.__setattr__(self, "b", b)

    @property
    def degree(self) -> int:
        """``C = -K_S . D = 3a + sum b_i``."""
        return 3 * self.a + sum(self.b)

    def canonical(self) -> DivisorClass:
        return DivisorClass(self.a, tuple(sorted(self.b, reverse=True)))

    def to_json(self) -> dict:
        return {"a": self.a, "b": list(self.b)}

    def __str__(self):
        return f"(a={self.a}, b={self.b})"


def pushforward_ch(divisor: DivisorClass) -> ChernVector:
    a, b = divisor.a, divisor.b
    big_c = divisor.degree
    sq = sum(t * t for t in b)
    return ChernVector(
        0,
        1,
        Fraction(big_c, 5) - Fraction(1, 2),
        Fraction(a * a - 3 * a - sq - sum(b), 10) + Fraction(1, 6),
    )


def _objective(a: int, b) -> int:
    """``a^2 - sum b_i^2``; ``e = (objective - C)/10 + 1/6``."""
    return a * a - sum(t * t for t in b)


def _value(big_c: int, objective: int) -> Fraction:
    return Fraction(objective - big_c, 10) + Fraction(1, 6)


@dataclass(frozen=True)
class OptResult:
    C: int
    max_ch3: Fraction
    argmax: tuple[DivisorClass, ...]

    def to_json(self) -> dict:
        return {
            "C": self.C,
            "max_ch3": fmt_rational(self.max_ch3),
            "argmax": [d.to_json() for d in self.argmax],
        }


def split_degree(big_c: int) -> tuple[int, int]:
    """``C = 5k + j`` with ``j`` in ``[-2, 2]``."""
    k = (big_c + 2) // 5
    return k, big_c - 5 * k


def closed_form_max(big_c: int) -> Fraction:
    k, j = split_degree(big_c)
    table = {
        0: Fraction(k * k - k, 2),
        1: Fraction(5 * k * k - 3 * k - 2, 10),
        -1: Fraction(5 * k * k - 7 * k, 10),
        2: Fraction(5 * k * k - k - 2, 10),
        -2: Fraction(5 * k * k - 9 * k + 2, 10),
    }
    return table[j] + Fraction(1, 6)


def _families(big_c: int) -> list[DivisorClass]:
    k, j = split_degree(big_c)
    if j == 0:
        fams = [(3 * k, (-k,) * 4)]
    elif j == 1:
        fams = [(3 * k, (1 - k, -k, -k, -k)), (3 * k + 1, (-k, -k, -k - 1, -k - 1))]
    elif j == -1:
        fams = [(3 * k, (-k, -k, -k, -1 - k)), (3 * k - 1, (1 - k, 1 - k, -k, -k))]
    elif j == 2:
        fams = [(3 * k + 1, (-k, -k, -k, -1 - k)), (3 * k + 2, (-1 - k,) * 4)]
    else:
        fams = [(3 * k - 1, (1 - k, -k, -k, -k)), (3 * k - 2, (1 - k,) * 4)]
    return sorted(DivisorClass(a, b).canonical() for a, b in fams)


def optimize_divisor(big_c: int) -> OptResult:
    """Maximal ``e`` of ``O_S(D)`` with ``3a + sum b_i = C``, by the closed forms."""
    argmax = tuple(_families(big_c))
    value = closed_form_max(big_c)
    for d in argmax:
        assert d.degree == big_c and pushforward_ch(d).e == value
    return OptResult(big_c, value, argmax)


class InconclusiveSearch(RuntimeError):
    """The exhaustive search box was too small to certify the optimum."""


def _balanced(total: int) -> tuple[int, int, int, int]:
    q, rem = divmod(total, 4)
    return tuple([q + 1] * rem + [q] * (4 - rem))


def _tuples_with_sum(total: int, slack: Fraction):
    """All integer 4-tuples with the given sum and ``sum (b_i - total/4)^2 <= slack``."""
    mean = Fraction(total, 4)
    reach = math.isqrt(math.floor(slack)) + 1 if slack >= 0 else -1
    if reach < 0:
        return
    lo, hi = math.floor(mean - reach), math.ceil(mean + reach)
    for b1 in range(lo, hi + 1):
        r1 = (b1 - mean) ** 2
        if r1 > slack:
            continue
        for b2 in range(lo, hi + 1):
            r2 = r1 + (b2 - mean) ** 2
            if r2 > slack:
                continue
            for b3 in range(lo, hi + 1):
                b4 = total - b1 - b2 - b3
                if r2 + (b3 - mean) ** 2 + (b4 - mean) ** 2 <= slack:
                    yield (b1, b2, b3, b4)


def brute_force_divisor(big_c: int, radius: int) -> OptResult:
    """Exhaustive maximum over ``|a - 3C/5| <= radius``.

    For each ``a`` only tuples whose spread around the mean could still beat
    the best value so far are visited; that ball is exact, so the scan is
    complete inside the ``a`` box.  The optimum must lie strictly inside it.
    """
    center = Fraction(3 * big_c, 5)
    a_lo, a_hi = math.ceil(center - radius), math.floor(center + radius)
    a0 = round(center)
    best = _objective(a0, _balanced(big_c - 3 * a0))
    winners: set[DivisorClass] = set()
    for a in range(a_lo, a_hi + 1):
        total = big_c - 3 * a
        # a^2 - sum b^2 >= best  <=>  sum (b - T/4)^2 <= a^2 - best - T^2/4
        slack = a * a - best - Fraction(total * total, 4)
        for b in _tuples_with_sum(total, slack):
            obj = _objective(a, b)
            if obj > best:
                best, winners = obj, set()
            if obj == best:
                winners.add(DivisorClass(a, b).canonical())
    if not winners:
        raise InconclusiveSearch(f"no candidate found for C={big_c}")
    for d in winners:
        if not (center - radius < d.a < center + radius):
            raise InconclusiveSearch(f"optimum at a={d.a} touches the search box; enlarge radius")
    return OptResult(big_c, _value(big_c, best), tuple(sorted(winners)))


def extension_ch(kind: str, divisor: DivisorClass) -> ChernVector:
    """Class of an extension of ``O_S(D)`` by ``O(-1)^2`` or by ``U``."""
    push = pushforward_ch(divisor)
    if kind == "c1_neg1":
        base = standard_object("O(-1)").scale(2)
    elif kind == "c1_0":
        base = standard_object("U")
    else:
        raise DomainError(f"unknown extension kind {kind!r}")
    return (base + push).checked()


def conjecture_bound(c: int, big_c: int) -> Fraction:
    constants = {-1: Fraction(-1, 3), 0: Fraction(1, 30)}
    if c not in constants:
        raise DomainError("c must be -1 or 0")
    return constants[c] + optimize_divisor(big_c).max_ch3
