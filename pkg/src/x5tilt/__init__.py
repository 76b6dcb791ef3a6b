"""Exact tilt-stability machinery on the quintic del Pezzo threefold X5."""

from .chern import ChernVec2, ChernVector, standard_object
from .numerics import DomainError, QuadNum, quad_cmp, quad_floor, quad_make

__all__ = [
    "ChernVec2",
    "ChernVector",
    "DomainError",
    "QuadNum",
    "quad_cmp",
    "quad_floor",
    "quad_make",
    "standard_object",
]
__version__ = "0.1.0"
