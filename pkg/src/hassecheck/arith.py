"""Exact integer/rational arithmetic and elementary number theory.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``;
both are arbitrary precision, immutable and canonical (a Fraction is always in
lowest terms with a positive denominator).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "ResidueClass",
    "crt",
    "format_rational",
    "integer_root",
    "is_prime",
    "jacobi",
    "legendre",
    "next_prime",
    "parse_rational",
    "primes_from",
    "squarefree_part",
    "trial_factor",
    "valuation",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Strong-pseudoprime bases that are deterministic for n < 3.3e24 > 2^64.
_DETERMINISTIC_BASES = _SMALL_PRIMES
_RANDOM_ROUNDS = 64  # 4^-64 = 2^-128


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2**64, error < 2**-128 above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def strong_probable_prime(a: int) -> bool:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return True
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return True
        return False

    if n < 1 << 64:
        return all(strong_probable_prime(a) for a in _DETERMINISTIC_BASES)
    import random

    rng = random.Random(n)
    return all(strong_probable_prime(rng.randrange(2, n - 1)) for _ in range(_RANDOM_ROUNDS))


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    n += 1
    while not is_prime(n):
        n += 1
    return n


def primes_from(start: int):
    """Yield primes >= start in increasing order."""
    p = start - 1
    while True:
        p = next_prime(p)
        yield p


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, via reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int, check: bool = False) -> int:
    """Legendre symbol (a/p) for an odd prime p.

    ``check=True`` verifies primality of ``p`` (used by the test suite).
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"legendre symbol needs an odd prime, got {p}")
    if check and not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return jacobi(a, p)


def valuation(n: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = Fraction(n)
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def trial_factor(n: int, limit: int = 10**6) -> tuple[dict[int, int], int]:
    """Factor |n| by trial division up to ``limit``.

    Returns (factors, cofactor) where cofactor is 1 or has no prime factor
    below ``limit``.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    while p <= limit and p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if 1 < n and (n <= limit or n < limit * limit):
        factors[n] = factors.get(n, 0) + 1
        n = 1
    return factors, n


def squarefree_part(n: int) -> int:
    """The squarefree d with n = d*m^2, sign preserved."""
    if n == 0:
        raise ValueError("squarefree part of zero is undefined")
    factors, rest = trial_factor(n)
    d = -1 if n < 0 else 1
    for p, e in factors.items():
        if e % 2:
            d *= p
    if rest != 1:
        r = isqrt(rest)
        if r * r != rest:
            d *= rest
    return d


def integer_root(n: int, k: int) -> int | None:
    """The exact integer k-th root of n, or None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


@dataclass(frozen=True)
class ResidueClass:
    """value mod modulus, normalized so that 0 <= value < modulus."""

    value: int
    modulus: int

    def __post_init__(self):
        m = abs(self.modulus)
        if m < 2:
            raise ValueError(f"modulus must have absolute value >= 2, got {self.modulus}")
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "value", self.value % m)

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def crt(residues: list[ResidueClass]) -> ResidueClass:
    """Combine congruences with pairwise coprime moduli."""
    if not residues:
        raise ValueError("crt needs at least one congruence")
    value, modulus = residues[0].value, residues[0].modulus
    for r in residues[1:]:
        if gcd(modulus, r.modulus) != 1:
            raise ValueError(f"moduli {modulus} and {r.modulus} are not coprime")
        t = (r.value - value) * pow(modulus, -1, r.modulus) % r.modulus
        value += modulus * t
        modulus *= r.modulus
    return ResidueClass(value, modulus)


def parse_rational(text: str) -> Fraction:
    """Parse "n" or "n/d" decimal notation into a canonical Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    num, sep, den = text.partition("/")
    try:
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    return value


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
