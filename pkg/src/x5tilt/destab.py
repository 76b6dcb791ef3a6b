"""Enumeration of candidate destabilizing classes along the ray beta = beta_-(E).

A candidate is a truncated class ``F = (s, x, y)`` with ``s > 0``.  For each
rank ``s`` the integer ``x`` is confined to the ``ch1^beta`` window, and
for each ``x`` the ``y`` values run over the lattice ``x^2/2 + (1/5)Z`` with
``0 <= D(F) < D(E)``.  Every rejection is recorded, nothing is dropped
silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .chern import ChernVec2, discriminant
from .numerics import DomainError, QuadNum, fmt_rational, quad_ceil, quad_floor
from .tilt import beta_pm
from .walls import Wall, numerical_wall, wall_crosses_ray

# rejection reasons
SLOPE_NOT_BELOW = "slope_not_below"
RANK_BOUND = "rank_bound"
DELTA_ADDITIVITY = "delta_additivity"
EMPTY_WALL = "empty_wall"
MISSES_RAY = "misses_ray"  # semicircle on the branch of beta_+
EXCLUDED = "excluded"


@dataclass(frozen=True)
class SearchConfig:
    use_rank_bound: bool = True
    use_delta_additivity: bool = True
    exclusions: tuple[ChernVec2, ...] = ()
    s_max_override: Optional[int] = None
    strict_window: bool = True

    def __post_init__(self):
        if self.s_max_override is not None and self.s_max_override < 1:
            raise DomainError("s_max_override must be at least 1")
        object.__setattr__(self, "exclusions", tuple(_as_vec2(e) for e in self.exclusions))


@dataclass(frozen=True)
class YEntry:
    y: Fraction
    wall: Wall
    reasons: tuple[str, ...]

    @property
    def survives(self) -> bool:
        return not self.reasons

    def to_json(self) -> dict:
        return {
            "y": fmt_rational(self.y),
            "wall": self.wall.to_json(),
            "status": "survivor" if self.survives else "rejected",
            "reasons": list(self.reasons),
        }


@dataclass(frozen=True)
class Candidate:
    s: int
    x: int
    confined: bool
    reasons: tuple[str, ...] = ()  # rejections at the (s, x) level
    entries: tuple[YEntry, ...] = ()

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "x": self.x,
            "confined": self.confined,
            "reasons": list(self.reasons),
            "y": [e.to_json() for e in self.entries],
        }


@dataclass
class SearchReport:
    target: ChernVec2
    beta_minus: QuadNum
    s_max: int
    candidates: list[Candidate] = field(default_factory=list)

    @property
    def survivors(self) -> list[ChernVec2]:
        out = []
        for cand in self.candidates:
            if cand.reasons:
                continue
            for entry in cand.entries:
                if entry.survives:
                    out.append(ChernVec2(cand.s, cand.x, entry.y))
        return out

    def to_json(self) -> dict:
        bm = self.beta_minus
        return {
            "target": self.target.to_json(),
            "beta_minus": {"a": fmt_rational(bm.a), "b": fmt_rational(bm.b), "m": fmt_rational(bm.m)},
            "s_max": self.s_max,
            "candidates": [c.to_json() for c in self.candidates],
            "survivors": [s.to_json() for s in self.survivors],
        }


def _as_vec2(v) -> ChernVec2:
    if isinstance(v, ChernVec2):
        return v
    r, c, d = list(v)[:3]
    return ChernVec2(int(r), int(c), Fraction(d))


def ch1_window(v, s: int) -> tuple[QuadNum, QuadNum]:
    """Endpoints of ``beta_- s < x < c - beta_- r + beta_- s``."""
    v = _as_vec2(v)
    bm, _ = beta_pm(v)
    return bm * s, (bm * s) + v.c - bm * v.r


def window_integers(lo: QuadNum, hi: QuadNum, strict: bool = True) -> range:
    if strict:
        first = quad_floor(lo) + 1
        last = quad_ceil(hi) - 1
    else:
        first = quad_ceil(lo)
        last = quad_floor(hi)
    return range(first, last + 1)


def minimal_ch1_check(v, beta0) -> bool:
    """Whether ``c - beta0 r`` is the least positive value the lattice allows at ``beta0``."""
    v = _as_vec2(v)
    beta0 = Fraction(beta0)
    value = v.c - beta0 * v.r
    return value > 0 and value == Fraction(1, beta0.denominator)


def _y_range(s: int, x: int, disc_e: Fraction) -> list[Fraction]:
    """Lattice ``y`` in ``x^2/2 + (1/5)Z`` with ``0 <= 25(x^2 - 2sy) < disc_e``."""
    base = Fraction(x * x, 2)
    y_hi = Fraction(x * x, 2 * s)  # D(F) >= 0
    y_lo = (Fraction(x * x) - disc_e / 25) / (2 * s)  # D(F) < D(E), strict
    n_hi = math.floor((y_hi - base) * 5)
    n_lo = math.floor((y_lo - base) * 5) + 1
    return [base + Fraction(n, 5) for n in range(n_lo, n_hi + 1)]


def _confined(x: int, s: int, beta_minus: QuadNum, ceiling: int) -> bool:
    """Whether ``beta_+(F) < 2 mu(F) - beta_-(E) <= ceiling``.

    Then both roots of ``F`` sit in ``(beta_-(E), ceiling)`` which holds
    no integer, so the rank bound ``D(F) >= s^2`` applies.
    """
    return (-beta_minus) + Fraction(2 * x, s) <= ceiling


def search_depth(v: ChernVec2) -> tuple[int, int, int]:
    """``(s_max, s_rank, s_conf)``.

    ``s_rank`` is the largest ``s`` with ``s^2 < D(E)``; from ``s_conf`` on
    every window class is confined, so ranks beyond ``max(s_rank, s_conf-1)``
    cannot carry a survivor.
    """
    disc = discriminant(v)
    s_rank = math.isqrt(max(math.floor(disc), 0))
    if s_rank * s_rank >= disc:
        s_rank -= 1
    bm, _ = beta_pm(v)
    ceiling = quad_floor(bm) + 1
    width = bm * (-v.r) + v.c  # ch1 at beta_-
    gap = (-bm) + ceiling
    s_conf = max(1, quad_ceil(width * 2 / gap))
    return max(s_rank, s_conf - 1, 1), s_rank, s_conf


def enumerate_destabilizers(v, cfg: SearchConfig = SearchConfig()) -> SearchReport:
    v = _as_vec2(v)
    if v.r <= 0:
        raise DomainError("target rank must be positive")
    disc_e = discriminant(v)
    if disc_e < 0:
        raise DomainError("target discriminant is negative")
    bm, _ = beta_pm(v)
    ceiling = quad_floor(bm) + 1
    s_max = cfg.s_max_override if cfg.s_max_override is not None else search_depth(v)[0]
    mu_e = Fraction(v.c, v.r)
    excluded = set(cfg.exclusions)
    report = SearchReport(target=v, beta_minus=bm, s_max=s_max)

    for s in range(1, s_max + 1):
        lo, hi = ch1_window(v, s)
        for x in window_integers(lo, hi, cfg.strict_window):
            confined = _confined(x, s, bm, ceiling)
            if not Fraction(x, s) < mu_e:
                report.candidates.append(Candidate(s, x, confined, (SLOPE_NOT_BELOW,)))
                continue
            entries = []
            for y in _y_range(s, x, disc_e):
                f = ChernVec2(s, x, y)
                disc_f = discriminant(f)
                wall = numerical_wall(v, f)
                reasons = []
                if cfg.use_rank_bound and s != 1 and confined and disc_f < s * s:
                    reasons.append(RANK_BOUND)
                if cfg.use_delta_additivity and not disc_f + discriminant(v - f) < disc_e:
                    reasons.append(DELTA_ADDITIVITY)
                if not wall.is_semicircle:
                    reasons.append(EMPTY_WALL)
                elif not wall_crosses_ray(wall, bm):
                    reasons.append(MISSES_RAY)
                if f in excluded:
                    reasons.append(EXCLUDED)
                entries.append(YEntry(y, wall, tuple(reasons)))
            report.candidates.append(Candidate(s, x, confined, (), tuple(entries)))
    return report


def survivor_set(report: SearchReport) -> set[tuple]:
    return {(f.r, f.c, f.d) for f in report.survivors}


def parse_classes(items: Iterable) -> tuple[ChernVec2, ...]:
    out = []
    for item in items:
        if isinstance(item, dict):
            out.append(ChernVec2.from_json(item))
        else:
            out.append(_as_vec2(item))
    return tuple(out)
