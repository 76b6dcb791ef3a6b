"""Independent reference implementations used only by the tests."""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import iv

iv.prec = 200


def iv_frac(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def iv_quad(x):
    """Enclosure of ``a + b*sqrt(m)`` at 200 bits."""
    return iv_frac(x.a) + iv_frac(x.b) * iv.sqrt(iv_frac(x.m))


def iv_sign(x, y):
    """-1/0/+1 when the enclosure of ``x - y`` decides the sign, else None."""
    diff = iv_quad(x) - iv_quad(y)
    if diff.b < 0:
        return -1
    if diff.a > 0:
        return 1
    return None


def iv_floor(x) -> int:
    enc = iv_quad(x)
    lo, hi = int(mpmath.floor(enc.a)), int(mpmath.floor(enc.b))
    assert lo == hi, "enclosure straddles an integer"
    return lo


def brute_destab(v, s_range, x_range, y_range, exclusions=()):
    """Exhaustive scan over a box of (s, x, y) with the same predicates as the search.

    Written against the defining inequalities, not the search's helpers:
    the window is tested by squaring, the y lattice by direct membership.
    """
    r, c, d = v
    disc_e = 25 * (c * c - 2 * r * d)
    mu_e = Fraction(c, r)
    rad = disc_e / (25 * r * r)  # beta_- = mu_e - sqrt(rad)

    def vs_beta_minus(q: Fraction) -> int:
        """Sign of ``q - beta_-`` = sign of ``(q - mu_e) + sqrt(rad)``."""
        t = q - mu_e
        if t >= 0:
            return 0 if (t == 0 and rad == 0) else 1
        gap = rad - t * t
        return (gap > 0) - (gap < 0)

    k = int(mu_e) + 5
    while vs_beta_minus(Fraction(k)) > 0:
        k -= 1
    ceiling = k + 1  # smallest integer strictly above beta_-

    out = set()
    for s in s_range:
        for x in x_range:
            # beta_- s < x  and  x < c + beta_- (s - r)
            if vs_beta_minus(Fraction(x, s)) <= 0:
                continue
            if s > r and vs_beta_minus(Fraction(x - c, s - r)) >= 0:
                continue
            if s < r and vs_beta_minus(Fraction(x - c, s - r)) <= 0:
                continue
            if s == r and not x < c:
                continue
            if not Fraction(x, s) < mu_e:
                continue
            # 2x/s - beta_- <= ceiling  <=>  2x/s - ceiling <= beta_-
            confined = vs_beta_minus(Fraction(2 * x, s) - ceiling) <= 0
            for y in y_range:
                if (5 * (y - Fraction(x * x, 2))).denominator != 1:
                    continue
                disc_f = 25 * (x * x - 2 * s * y)
                if not 0 <= disc_f < disc_e:
                    continue
                if s != 1 and confined and disc_f < s * s:
                    continue
                rg, cg, dg = r - s, c - x, d - y
                if not disc_f + 25 * (cg * cg - 2 * rg * dg) < disc_e:
                    continue
                k_ = c * s - x * r
                if k_ == 0:
                    continue
                y_ = d * s - y * r
                x_ = d * x - y * c
                center = Fraction(y_, k_)
                if center * center - 2 * Fraction(x_, k_) <= 0:
                    continue
                # walls left of the vertical wall are the ones around beta_-
                if not center < mu_e:
                    continue
                if (s, x, y) in exclusions:
                    continue
                out.add((s, x, y))
    return out
