"""The cubic E: w1^2 w2 = w0^3 - 16 w2^3, the degree-6 map gamma to P^1, and torsion checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .arith import trial_factor
from .poly import MPoly, UPoly, parse_poly, rational_roots
from .quadfield import QuadField

W = ("w0", "w1", "w2")

Point = Optional[tuple[Fraction, Fraction]]  # None is the point at infinity


@dataclass(frozen=True)
class CurveData:
    E_relation: MPoly
    gamma_num: MPoly
    gamma_den: MPoly
    known_K_points: tuple[tuple, ...]
    known_L_points: tuple[tuple, ...] = field(default=())
    field: Optional[QuadField] = None


def default_curve(quad: QuadField | None = None) -> CurveData:
    """E with gamma = (w0 w2 + w1^2 + 16 w2^2 : w0 w1 + w1 w2).

    The L-points (0 : +-4 sqrt(-1) : 1) only exist when L = Q(sqrt(-1)).
    """
    k_points = ((0, 1, 0),)
    l_points: tuple[tuple, ...] = ()
    if quad is not None:
        one = quad(1)
        k_points = tuple(tuple(one * c for c in pt) for pt in k_points)
        if quad.d == -1:
            i = quad.sqrt_d
            l_points = k_points + ((quad(0), 4 * i, one), (quad(0), -4 * i, one))
        else:
            l_points = k_points
    return CurveData(
        E_relation=parse_poly("w1^2*w2 - w0^3 + 16*w2^3", W),
        gamma_num=parse_poly("w0*w2 + w1^2 + 16*w2^2", W),
        gamma_den=parse_poly("w0*w1 + w1*w2", W),
        known_K_points=k_points,
        known_L_points=l_points,
        field=quad,
    )


def _is_zero(x) -> bool:
    return not x


def eval_gamma(pt: Sequence, data: CurveData) -> tuple:
    """gamma(pt) as (t : 1) or (1 : 0)."""
    if len(pt) != 3:
        raise ValueError("expected a projective triple")
    if all(_is_zero(c) for c in pt):
        raise ValueError("(0:0:0) is not a projective point")
    assignment = dict(zip(W, pt))
    if not _is_zero(data.E_relation.evaluate(assignment)):
        raise ValueError(f"point {tuple(map(str, pt))} is not on E")
    num = data.gamma_num.evaluate(assignment)
    den = data.gamma_den.evaluate(assignment)
    if _is_zero(num) and _is_zero(den):
        raise ValueError("point lies in the base locus of gamma")
    if _is_zero(den):
        return (num / num, den * 0)
    return (num / den, den / den)


# -- short Weierstrass torsion -------------------------------------------------


def _add(P: Point, Q: Point, a4: int) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if y1 + y2 == 0:
            return None
        lam = (3 * x1 * x1 + a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def _square_divisor_roots(n: int) -> list[int]:
    """All y > 0 with y^2 | n."""
    factors, rest = trial_factor(abs(n))
    if rest != 1:
        raise ValueError(f"cannot factor {n} by trial division")
    ranges = [[p**k for k in range(e // 2 + 1)] for p, e in sorted(factors.items())]
    out = []
    for combo in product(*ranges):
        y = 1
        for c in combo:
            y *= c
        out.append(y)
    return sorted(out)


def _order_at_most(P: Point, a4: int, cap: int) -> int | None:
    Q = P
    for k in range(1, cap + 1):
        if Q is None:
            return k
        if Q[0].denominator != 1 or Q[1].denominator != 1:
            return None
        Q = _add(Q, P, a4)
    return None


def nagell_lutz_torsion(a4: int, a6: int, cap: int = 12) -> set[tuple[Fraction, Fraction]]:
    """Affine rational torsion points of y^2 = x^3 + a4 x + a6 (integral coefficients)."""
    disc = 4 * a4**3 + 27 * a6**2
    if disc == 0:
        raise ValueError("singular curve")
    candidates = []
    for y in [0] + _square_divisor_roots(disc):
        cubic = UPoly([a6 - y * y, a4, 0, 1], "x")
        for x in rational_roots(cubic):
            if x.denominator == 1:
                candidates.extend({(x, Fraction(y)), (x, Fraction(-y))})
    return {P for P in candidates if _order_at_most(P, a4, cap) is not None}


def on_curve(P: tuple, a4: int, a6: int) -> bool:
    x, y = P
    return y * y == x**3 + a4 * x + a6
