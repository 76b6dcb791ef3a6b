"""SVG rendering of walls and of the collinearity curves of the collection.

Geometry is computed exactly; numbers become decimals only when written
out, with six places.  Curves given implicitly are traced on a grid whose
node signs are exact (integer arithmetic after clearing denominators).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

import numpy as np
from shapely.geometry import Polygon, box
from skimage import measure

from .chern import ChernVector, discriminant, standard_object
from .numerics import DomainError, parse_rational
from .walls import BiPoly, SEMICIRCLE, VERTICAL, Wall, dependence_curve, numerical_wall, q_zero_wall

WIDTH = 600
PAD = 30
COLORS = ("#1f77b4", "#d62728", "#7b3294", "#2ca02c", "#ff7f0e", "#8c564b", "#17becf", "#e377c2")


@dataclass(frozen=True)
class Viewport:
    beta_min: Fraction
    beta_max: Fraction
    alpha_min: Fraction
    alpha_max: Fraction

    def __post_init__(self):
        if self.alpha_min < 0:
            raise DomainError("viewport must lie in alpha >= 0")
        if self.beta_max < self.beta_min or self.alpha_max < self.alpha_min:
            raise DomainError("viewport bounds are reversed")

    @classmethod
    def parse(cls, text: str) -> Viewport:
        parts = [parse_rational(p) for p in text.split(",")]
        if len(parts) != 4:
            raise DomainError("viewport needs beta_min,beta_max,alpha_min,alpha_max")
        return cls(*parts)

    @property
    def empty(self) -> bool:
        return self.beta_max == self.beta_min or self.alpha_max == self.alpha_min

    @property
    def scale(self) -> float:
        span = max(self.beta_max - self.beta_min, self.alpha_max - self.alpha_min)
        return (WIDTH - 2 * PAD) / float(span) if span else 1.0

    def size(self) -> tuple[int, int]:
        s = self.scale
        return (
            int(round(float(self.beta_max - self.beta_min) * s)) + 2 * PAD,
            int(round(float(self.alpha_max - self.alpha_min) * s)) + 2 * PAD,
        )

    def to_px(self, beta, alpha) -> tuple[float, float]:
        s = self.scale
        return (
            PAD + (float(beta) - float(self.beta_min)) * s,
            PAD + (float(self.alpha_max) - float(alpha)) * s,
        )


def _f(x: float) -> str:
    text = f"{x:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _polyline(points: Iterable[tuple[float, float]], **attrs) -> str:
    pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in points)
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in sorted(attrs.items()))
    return f'<polyline points="{pts}" fill="none"{extra}/>'


def _line(p, q, **attrs) -> str:
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in sorted(attrs.items()))
    return f'<line x1="{_f(p[0])}" y1="{_f(p[1])}" x2="{_f(q[0])}" y2="{_f(q[1])}"{extra}/>'


class _Svg:
    def __init__(self, vp: Viewport, title: str):
        self.vp = vp
        self.title = title
        self.body: list[str] = []

    def add(self, element: str):
        self.body.append(element)

    def render(self) -> str:
        w, h = self.vp.size()
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">\n'
            f"<title>{escape(self.title)}</title>\n"
            f'<defs><clipPath id="vp"><rect x="{PAD}" y="{PAD}" width="{w - 2 * PAD}" '
            f'height="{h - 2 * PAD}"/></clipPath></defs>\n'
        )
        body = "\n".join(self.body)
        inner = f'<g clip-path="url(#vp)">\n{body}\n</g>\n' if body else ""
        return head + inner + "</svg>\n"


def _axes(svg: _Svg):
    vp = svg.vp
    if vp.alpha_min == 0:
        svg.add(_line(vp.to_px(vp.beta_min, 0), vp.to_px(vp.beta_max, 0), stroke="#000000", stroke_width="1"))
    if vp.beta_min <= 0 <= vp.beta_max:
        svg.add(_line(vp.to_px(0, vp.alpha_min), vp.to_px(0, vp.alpha_max), stroke="#000000", stroke_width="1"))


def _sample(lo: Fraction, hi: Fraction, n: int) -> list[float]:
    return [float(lo + (hi - lo) * i / n) for i in range(n + 1)]


def _semicircle_points(wall: Wall, vp: Viewport, n: int = 180):
    c, rad = float(wall.center), math.sqrt(wall.radius_sq)
    return [vp.to_px(c + rad * math.cos(math.pi * i / n), rad * math.sin(math.pi * i / n)) for i in range(n + 1)]


def _draw_wall(svg: _Svg, wall: Wall, color: str, width: str = "1.5"):
    vp = svg.vp
    if wall.kind == SEMICIRCLE:
        svg.add(_polyline(_semicircle_points(wall, vp), stroke=color, stroke_width=width))
    elif wall.kind == VERTICAL:
        svg.add(_line(vp.to_px(wall.beta, 0), vp.to_px(wall.beta, vp.alpha_max), stroke=color, stroke_width=width))


def _hyperbola(svg: _Svg, v):
    """The curve ``nu(v) = 0``: ``alpha^2 = (beta - mu)^2 - D/(25 r^2)``, with its asymptotes."""
    vp = svg.vp
    r, c, d = v[0], v[1], Fraction(v[2])
    if r == 0:
        return
    mu = Fraction(c, r)
    offset = discriminant((r, c, d)) / (25 * r * r)
    for side in (-1, 1):
        pts = []
        for b in _sample(vp.beta_min, vp.beta_max, 400):
            rad = (b - float(mu)) ** 2 - float(offset)
            if rad >= 0 and side * (b - float(mu)) >= 0:
                pts.append(vp.to_px(b, math.sqrt(rad)))
        if len(pts) > 1:
            svg.add(_polyline(pts, stroke="#555555", stroke_width="1"))
    top = vp.alpha_max
    for sign in (-1, 1):
        svg.add(
            _line(vp.to_px(mu, 0), vp.to_px(mu + sign * top, top), stroke="#555555", stroke_width="1", stroke_dasharray="4,3")
        )


def plot_walls(v: ChernVector, others: Sequence, vp: Viewport, include_q: bool = True) -> str:
    """Walls ``W(v, w)`` for each ``w`` in ``others``, the hyperbola and the Q=0 wall."""
    svg = _Svg(vp, f"numerical walls for ch = {v}")
    if vp.empty:
        return svg.render()
    _axes(svg)
    _hyperbola(svg, v)
    for i, w in enumerate(others):
        _draw_wall(svg, numerical_wall(v, w), COLORS[i % len(COLORS)])
    if include_q and len(v) > 3 and discriminant(v) > 0:
        wall = q_zero_wall(v)
        if wall.is_semicircle:
            _draw_wall(svg, wall, "#e31a1c", width="3")
    return svg.render()


def _integer_grid_signs(poly: BiPoly, vp: Viewport, nb: int, na: int) -> np.ndarray:
    """Exact signs of ``poly`` at ``beta_i, alpha_j`` on an ``(na+1) x (nb+1)`` grid."""
    deg = max(poly.degree(), 0)
    den = nb * na
    # beta = (B0*den + i*(B1-B0)*na) / den etc.; clear all denominators
    q = 1
    for t in (vp.beta_min, vp.beta_max, vp.alpha_min, vp.alpha_max):
        q = q * t.denominator // math.gcd(q, t.denominator)
    scale = q * den
    coef_den = 1
    for c in poly.terms.values():
        coef_den = coef_den * c.denominator // math.gcd(coef_den, c.denominator)
    terms = [(i, j, int(c * coef_den)) for (i, j), c in poly.terms.items()]
    b_nums = [int((vp.beta_min + (vp.beta_max - vp.beta_min) * Fraction(i, nb)) * scale) for i in range(nb + 1)]
    a_nums = [int((vp.alpha_min + (vp.alpha_max - vp.alpha_min) * Fraction(j, na)) * scale) for j in range(na + 1)]
    pow_s = [scale**k for k in range(deg + 1)]
    out = np.zeros((na + 1, nb + 1), dtype=np.int8)
    for row, a in enumerate(a_nums):
        for col, b in enumerate(b_nums):
            total = 0
            for i, j, c in terms:
                total += c * b**i * a**j * pow_s[deg - i - j]
            out[row, col] = (total > 0) - (total < 0)
    return out


def _strip_alpha(poly: BiPoly) -> BiPoly:
    """Divide out the largest power of alpha; the factor has no zeros for alpha > 0."""
    low = min((j for _, j in poly.terms), default=0)
    return BiPoly({(i, j - low): c for (i, j), c in poly.terms.items()})


def _trace(poly: BiPoly, vp: Viewport, nb: int = 240, na: int = 144) -> list[list[tuple[float, float]]]:
    poly = _strip_alpha(poly)
    signs = _integer_grid_signs(poly, vp, nb, na)
    db = float(vp.beta_max - vp.beta_min) / nb
    da = float(vp.alpha_max - vp.alpha_min) / na
    curves = []
    for contour in measure.find_contours(signs.astype(float), 0.0):
        curves.append([(float(vp.beta_min) + col * db, float(vp.alpha_min) + row * da) for row, col in contour])
    return curves


def region_d_polygon(vp: Viewport):
    """Region D clipped to the viewport, as a shapely geometry."""
    triangle = Polygon([(-1.0, 0.0), (-0.5, 0.0), (-0.5, 0.5)])
    frame = box(float(vp.beta_min), float(vp.alpha_min), float(vp.beta_max), float(vp.alpha_max))
    return triangle.intersection(frame)


COLLECTION = ("O(-1)", "Q(-1)", "U", "O(0)")


def plot_figure1(s, vp: Viewport) -> str:
    """The six pairwise collinearity curves of the collection, with region D shaded."""
    s = Fraction(s)
    svg = _Svg(vp, f"collinearity curves of the exceptional collection, s = {s}")
    if vp.empty:
        return svg.render()
    region = region_d_polygon(vp)
    if not region.is_empty and region.geom_type == "Polygon":
        pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in (vp.to_px(b, a) for b, a in region.exterior.coords))
        svg.add(f'<polygon points="{pts}" fill="#fdd49e" fill-opacity="0.5" stroke="none"/>')
    # region boundary lines beta = -1/2 and alpha = beta + 1
    svg.add(_line(vp.to_px(Fraction(-1, 2), vp.alpha_min), vp.to_px(Fraction(-1, 2), vp.alpha_max),
                  stroke="#999999", stroke_width="1", stroke_dasharray="2,2"))
    lo = vp.beta_min
    hi = vp.beta_max
    svg.add(_line(vp.to_px(lo, lo + 1), vp.to_px(hi, hi + 1), stroke="#999999", stroke_width="1", stroke_dasharray="2,2"))
    _axes(svg)
    chars = {name: standard_object(name) for name in COLLECTION}
    for idx, (a, b) in enumerate(combinations(COLLECTION, 2)):
        poly = dependence_curve(chars[a], chars[b], s)
        color = COLORS[idx % len(COLORS)]
        svg.add(f"<!-- {a} vs {b} -->")
        for curve in _trace(poly, vp):
            if len(curve) > 1:
                svg.add(_polyline((vp.to_px(x, y) for x, y in curve), stroke=color, stroke_width="1.5"))
    return svg.render()
