"""Arithmetic in quadratic fields Q(sqrt(d)) and prime splitting."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .arith import format_rational, integer_root, is_prime, legendre, squarefree_part

Rational = Union[int, Fraction]


class Splitting(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(d)); d is normalized to its squarefree part on construction."""

    d: int

    def __post_init__(self):
        if self.d == 0:
            raise ValueError("d must be nonzero")
        d = squarefree_part(self.d)
        if d == 1:
            raise ValueError("d must be squarefree and != 1")
        object.__setattr__(self, "d", d)

    def __call__(self, a: Rational = 0, b: Rational = 0) -> "QuadElem":
        return QuadElem(Fraction(a), Fraction(b), self)

    @property
    def sqrt_d(self) -> "QuadElem":
        return QuadElem(Fraction(0), Fraction(1), self)

    def __str__(self) -> str:
        return f"Q(sqrt({self.d}))"


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(d) with rational a, b."""

    a: Fraction
    b: Fraction
    field: QuadField

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.d
        return QuadElem(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElem(Fraction(1), Fraction(0), self.field), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadElem):
            return (self.a, self.b, self.field) == (other.a, other.b, other.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.field.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def conj(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.d * self.b * self.b

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.field)

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return f"{format_rational(self.a)} + {format_rational(self.b)}*sqrt({self.field.d})"

    __repr__ = __str__


def quad_add(x: QuadElem, y: QuadElem) -> QuadElem:
    return x + y


def quad_mul(x: QuadElem, y: QuadElem) -> QuadElem:
    return x * y


def quad_inv(x: QuadElem) -> QuadElem:
    return x.inverse()


def quad_conj(x: QuadElem) -> QuadElem:
    return x.conj()


def quad_norm(x: QuadElem) -> Fraction:
    return x.norm()


def splits_in_L(p: int, field: QuadField) -> Splitting:
    """Decomposition type of the rational prime p in Q(sqrt(d))."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = field.d
    if p == 2:
        if d % 4 != 1:
            return Splitting.RAMIFIED
        return Splitting.SPLIT if d % 8 == 1 else Splitting.INERT
    if d % p == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if legendre(d, p) == 1 else Splitting.INERT


def splits_completely_multiquadratic(p: int, generators: Iterable[int], field: QuadField) -> bool:
    """Whether odd p splits completely in Q(sqrt(d), sqrt(g1), sqrt(g2), ...)."""
    gens = list(generators)
    if p == 2:
        raise ValueError("p must be odd")
    for g in gens:
        if g % p == 0:
            raise ValueError(f"{p} divides generator {g}")
    if splits_in_L(p, field) is not Splitting.SPLIT:
        return False
    return all(legendre(g, p) == 1 for g in gens)


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return integer_root(q.numerator, 2) is not None and integer_root(q.denominator, 2) is not None


def is_square_in_L(n: Rational, field: QuadField) -> bool:
    """A nonzero rational is a square in Q(sqrt(d)) iff n or n/d is a rational square."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("n must be nonzero")
    return _is_rational_square(n) or _is_rational_square(n / field.d)


def is_cube_in_L(n: Rational, field: QuadField) -> bool:
    """A rational that is a cube in a quadratic field is already a rational cube."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("n must be nonzero")
    return integer_root(n.numerator, 3) is not None and integer_root(n.denominator, 3) is not None
