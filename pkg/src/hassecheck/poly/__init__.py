"""Exact polynomial arithmetic over Q."""

from .elim import DegenerateElimination, EliminationTrace, eliminate_two, resultant
from .mpoly import MPoly, ParseError, format_poly, parse_poly
from .upoly import (
    UPoly,
    divides,
    exact_div,
    gcd_many,
    gcd_upoly,
    lcm_squarefree,
    rational_roots,
    squarefree_part_upoly,
)

__all__ = [
    "DegenerateElimination",
    "EliminationTrace",
    "MPoly",
    "ParseError",
    "UPoly",
    "divides",
    "eliminate_two",
    "exact_div",
    "format_poly",
    "gcd_many",
    "gcd_upoly",
    "lcm_squarefree",
    "parse_poly",
    "rational_roots",
    "resultant",
    "squarefree_part_upoly",
]
