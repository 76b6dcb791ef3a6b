"""Tilt slope, central charges, the quadratic forms and region D.

Every charge carries the factor ``H^3 = 5`` uniformly, so ratios agree
with the usual normalized formulas while the generalized inequality form
``q_bmt`` reproduces integer-looking values such as ``41 - 150e``.

Functions take ``beta`` and ``alpha`` as plain numbers; they accept
Fractions, QuadNums, or any ring element supporting ``+ - *`` with
integers (the wall module feeds polynomials through the same code).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .chern import ChernVector, discriminant, standard_object, twisted_ch
from .numerics import DomainError, QuadNum

INF = float("inf")


@dataclass(frozen=True)
class TiltPoint:
    beta: Fraction
    alpha: Fraction

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class BridgelandPoint:
    beta: Fraction
    alpha: Fraction
    s: Fraction

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")


def _is_zero(x) -> bool:
    return x == 0


def _exact(x):
    return Fraction(x) if isinstance(x, int) else x


def nu(v, beta, alpha):
    """Tilt slope ``(d - beta c + (beta^2 - alpha^2) r / 2) / (c - beta r)``."""
    beta, alpha = _exact(beta), _exact(alpha)
    r, c, d, _ = twisted_ch(v, 0)
    den = c - beta * r
    if _is_zero(den):
        return INF
    num = d - beta * c + (beta * beta - alpha * alpha) * r / 2
    return num / den


def z_tilt(v, beta, alpha):
    """``(Re, Im)`` of the tilt central charge."""
    beta, alpha = _exact(beta), _exact(alpha)
    r, cb, db, _ = twisted_ch(v, beta)
    re = -5 * db + alpha * alpha * 5 * r / 2
    im = 5 * cb
    return re, im


def z_bridgeland(v, beta, alpha, s):
    """``(Re, Im)`` of ``Z_{alpha,beta,s} = -ch3^b + s a^2 ch1^b + i(a ch2^b - a^3/2 ch0)``."""
    beta, alpha = _exact(beta), _exact(alpha)
    r, cb, db, eb = twisted_ch(v, beta)
    re = -5 * eb + s * alpha * alpha * 5 * cb
    im = 5 * alpha * db - alpha * alpha * alpha * 5 * r / 2
    return re, im


def q_bmt(v, beta, alpha):
    """Generalized Bogomolov-Gieseker form ``alpha^2 D + 4 (ch2^b)^2 - 6 ch1^b ch3^b``.

    ``alpha = 0`` is allowed (boundary of the upper half-plane).
    """
    beta, alpha = _exact(beta), _exact(alpha)
    r, cb, db, eb = twisted_ch(v, beta)
    c, d = v[1], v[2]
    return 25 * (alpha * alpha * (c * c - 2 * r * d) + 4 * db * db - 6 * cb * eb)


def beta_pm(v) -> tuple[QuadNum, QuadNum]:
    """The roots ``mu -/+ sqrt(D) / (5|r|)`` of ``nu_{0,beta}(v) = 0``."""
    r, c, d = v[0], v[1], Fraction(v[2])
    if r == 0:
        raise DomainError("beta_pm needs nonzero rank")
    disc = discriminant((r, c, d))
    if disc < 0:
        raise DomainError(f"negative discriminant {disc}")
    mu = Fraction(c, r)
    rad = disc / (25 * r * r)
    return QuadNum(mu, -1, rad), QuadNum(mu, 1, rad)


def in_region_D(beta, alpha) -> bool:
    """``beta < -1/2`` and ``0 < alpha < beta + 1``."""
    return beta < Fraction(-1, 2) and 0 < alpha < beta + 1


# Generators of the heart, with the sign of the shift applied.
_COLLECTION = (
    ("O(-1)[3]", -1, standard_object("O(-1)")),
    ("Q(-1)[2]", 1, standard_object("Q(-1)")),
    ("U[1]", -1, standard_object("U")),
    ("O", 1, standard_object("O(0)")),
)


def collection_charges(beta, alpha, s) -> dict[str, tuple[Fraction, Fraction]]:
    out = {}
    for name, sign, ch in _COLLECTION:
        re, im = z_bridgeland(ch, beta, alpha, s)
        out[name] = (sign * re, sign * im)
    return out


def purple_curve(beta, alpha):
    """``5 alpha^2 - 5 beta^2 - 12 beta - 6``; its sign picks the phase generator."""
    return 5 * alpha * alpha - 5 * beta * beta - 12 * beta - 6


class PhaseBound(NamedTuple):
    generator: str
    phi: float


def _bounds_half_plane(w, charges) -> bool:
    wr, wi = w
    if wr == 0 and wi == 0:
        return False
    for zr, zi in charges:
        cross = wr * zi - wi * zr  # Im(conj(w) z)
        if cross > 0:
            return False
        if cross == 0 and (zr or zi) and wr * zr + wi * zi <= 0:
            return False  # antiparallel: phase phi_1 - 1 is excluded
    return True


def half_plane_phi(beta, alpha, s) -> Optional[PhaseBound]:
    """A phase ``phi_1`` with all four collection charges in ``(phi_1 - 1, phi_1]``.

    The preferred generator follows the sign of :func:`purple_curve`; the
    others are tried afterwards.  ``None`` means no half-open half-plane
    contains the four charges.
    """
    if not in_region_D(beta, alpha):
        raise DomainError(f"({beta}, {alpha}) is outside region D")
    charges = collection_charges(beta, alpha, s)
    side = purple_curve(beta, alpha)
    order = ["O(-1)[3]", "Q(-1)[2]"] if side <= 0 else ["Q(-1)[2]", "O(-1)[3]"]
    order += ["U[1]", "O"]
    values = list(charges.values())
    for name in order:
        w = charges[name]
        if _bounds_half_plane(w, values):
            return PhaseBound(name, math.atan2(float(w[1]), float(w[0])) / math.pi)
    return None


def bmt_holds(v: ChernVector, beta, alpha) -> bool:
    return q_bmt(v, beta, alpha) >= 0
