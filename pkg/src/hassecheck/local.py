"""Local arithmetic at the places of Q: squares, cubes and Hilbert symbols."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import is_prime, legendre, trial_factor, valuation

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q. ``p == 0`` is the real place, otherwise the p-adic one."""

    p: int

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"{self.p} is not a prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip()
        if text == "inf":
            return cls(0)
        return cls(int(text))

    @property
    def is_real(self) -> bool:
        return self.p == 0

    @property
    def is_dyadic(self) -> bool:
        return self.p == 2

    def __str__(self) -> str:
        return "inf" if self.p == 0 else str(self.p)


INF = Place(0)
TWO = Place(2)


def _nonzero(a: Rational, what: str = "argument") -> Fraction:
    a = Fraction(a)
    if a == 0:
        raise ValueError(f"{what} must be nonzero")
    return a


def _split(a: Fraction, p: int) -> tuple[int, int]:
    """Write a = p^v * u with u a p-adic unit; return (v, u mod p^3 as int)."""
    v = valuation(a, p)
    unit = a / Fraction(p) ** v
    m = p**3
    return v, unit.numerator * pow(unit.denominator, -1, m) % m


def is_square_in_Qv(a: Rational, v: Place) -> bool:
    a = _nonzero(a)
    if v.is_real:
        return a > 0
    k, u = _split(a, v.p)
    if k % 2:
        return False
    if v.p == 2:
        return u % 8 == 1
    return legendre(u, v.p) == 1


def is_cube_in_Qv(a: Rational, v: Place) -> bool:
    """Cube test in Q_v. Every real number and every 2-adic unit is a cube."""
    a = _nonzero(a)
    if v.is_real:
        return True
    k, u = _split(a, v.p)
    if k % 3:
        return False
    p = v.p
    if p == 2:
        return True
    if p == 3:
        return u % 9 in (1, 8)
    if p % 3 == 2:
        return True
    return pow(u, (p - 1) // 3, p) == 1


def hilbert(a: Rational, b: Rational, v: Place) -> int:
    """The quadratic Hilbert symbol (a, b)_v in {+1, -1}."""
    a = _nonzero(a, "a")
    b = _nonzero(b, "b")
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    # Square factors only change valuations by even amounts and units by
    # squares, so reducing the exponents mod 2 is the same as stripping them.
    p = v.p
    alpha, u = _split(a, p)
    beta, w = _split(b, p)
    alpha, beta = alpha % 2, beta % 2
    if p == 2:
        eps = lambda t: (t - 1) // 2 % 2  # noqa: E731
        omega = lambda t: (t * t - 1) // 8 % 2  # noqa: E731
        u, w = u % 8, w % 8
        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    return sign * legendre(u, p) ** beta * legendre(w, p) ** alpha


def _prime_support(n: int) -> list[int]:
    factors, rest = trial_factor(n)
    if rest != 1:
        raise ValueError(f"cannot fully factor {n} by trial division")
    return sorted(factors)


def hilbert_support(a: Rational, b: Rational) -> list[Place]:
    """Places where (a, b)_v = -1, in increasing order with inf first.

    Only the real place and primes dividing 2ab are examined; everywhere else
    both entries are units and the symbol is +1.
    """
    a = _nonzero(a, "a")
    b = _nonzero(b, "b")
    primes = {2}
    for q in (a, b):
        primes.update(_prime_support(q.numerator))
        primes.update(_prime_support(q.denominator) if q.denominator > 1 else ())
    places = [INF] + [Place(p) for p in sorted(primes)]
    return [v for v in places if hilbert(a, b, v) == -1]


def conic_solvable(a: Rational, b: Rational, v: Place) -> bool:
    """Whether x0^2 - a x1^2 - b x2^2 = 0 has a nontrivial Q_v point."""
    return hilbert(a, b, v) == 1
