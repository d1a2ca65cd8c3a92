"""Dense univariate arithmetic over Z/p and the multi-modular glue.

Polynomials here are plain lists of ints, index = degree, with no trailing
zeros (the zero polynomial is ``[]``). Every routine is exact; the modular
images are recombined by CRT against a rigorous size bound or verified by an
exact check afterwards.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from ..arith import next_prime

PRIME_BITS = 62


@lru_cache(maxsize=None)
def _prime_block(k: int) -> tuple[int, ...]:
    """The k-th block of 64 consecutive primes above 2**61."""
    p = (1 << (PRIME_BITS - 1)) if k == 0 else _prime_block(k - 1)[-1]
    out = []
    for _ in range(64):
        p = next_prime(p)
        out.append(p)
    return tuple(out)


def big_primes():
    """Deterministic stream of ~62-bit primes."""
    k = 0
    while True:
        yield from _prime_block(k)
        k += 1


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a, p: int) -> list[int]:
    return trim([c % p for c in a])


def deg(a: list[int]) -> int:
    return len(a) - 1


def pm_eval(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def pm_monic(a: list[int], p: int) -> list[int]:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def pm_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by b (b nonzero) over Z/p."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - db
        if q:
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - q * c) % p
        a.pop()
        trim(a)
    return a


def pm_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv = pow(b[-1], -1, p)
    quot = [0] * (len(a) - db)
    while a and len(a) - 1 >= db:
        shift = len(a) - 1 - db
        q = a[-1] * inv % p
        quot[shift] = q
        if q:
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - q * c) % p
        a.pop()
        trim(a)
    return trim(quot), a


def pm_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return reduce(out, p)


def pm_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd over Z/p."""
    a, b = reduce(a, p), reduce(b, p)
    while b:
        a, b = b, pm_rem(a, b, p)
    return pm_monic(a, p)


def pm_deriv(a: list[int], p: int) -> list[int]:
    return trim([i * c % p for i, c in enumerate(a)][1:])


def pm_res(a: list[int], b: list[int], p: int, m: int | None = None, n: int | None = None) -> int:
    """Resultant over Z/p of a and b taken with formal degrees m and n.

    This is the determinant of the (m+n)x(m+n) Sylvester matrix, so it
    commutes with reduction mod p even when leading coefficients vanish.
    """
    a, b = reduce(a, p), reduce(b, p)
    m = len(a) - 1 if m is None else m
    n = len(b) - 1 if n is None else n
    if m < len(a) - 1 or n < len(b) - 1:
        raise ValueError("formal degree below actual degree")
    if m == 0:
        return pow(a[0], n, p) if a else (1 if n == 0 else 0)
    if n == 0:
        return pow(b[0], m, p) if b else 0
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    factor = 1
    if da < m and db < n:
        return 0
    if da < m:
        # Expanding along the first column: ((-1)^n * lc(b)) per missing degree.
        s = b[-1] if n % 2 == 0 else (-b[-1]) % p
        factor = pow(s, m - da, p)
        m = da
    elif db < n:
        factor = pow(a[-1], n - db, p)
        n = db
    if m == 0:
        return factor * pow(a[0], n, p) % p
    if n == 0:
        return factor * pow(b[0], m, p) % p
    result = factor
    while True:
        if n == 0:
            return result * pow(b[0], m, p) % p
        r = pm_rem(a, b, p)
        if not r:
            return 0
        dr = len(r) - 1
        if (m * n) % 2:
            result = -result
        result = result * pow(b[-1], m - dr, p) % p
        a, b, m, n = b, r, n, dr


def interpolate(ys: list[int], p: int) -> list[int]:
    """Coefficients of the polynomial of degree < len(ys) with value ys[i] at i."""
    n = len(ys)
    c = list(ys)
    # Newton divided differences on nodes 0..n-1.
    for j in range(1, n):
        inv = pow(j, -1, p)
        for i in range(n - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) * inv % p
    coeffs = [0] * n
    for k in range(n - 1, -1, -1):
        # coeffs = coeffs * (x - k) + c[k]
        for i in range(n - 1, 0, -1):
            coeffs[i] = (coeffs[i - 1] - k * coeffs[i]) % p
        coeffs[0] = (c[k] - k * coeffs[0]) % p
    return coeffs


def interpolate_grid(values: list[int], dims: list[int], p: int) -> list[int]:
    """Tensor-product interpolation of a flattened grid (last axis fastest)."""
    vals = list(values)
    stride = 1
    for axis in range(len(dims) - 1, -1, -1):
        n = dims[axis]
        block = stride * n
        for start in range(0, len(vals), block):
            for off in range(stride):
                idx = [start + off + k * stride for k in range(n)]
                line = interpolate([vals[i] for i in idx], p)
                for i, v in zip(idx, line):
                    vals[i] = v
        stride = block
    return vals


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t


def symmetric(x: int, m: int) -> int:
    x %= m
    return x - m if x > m // 2 else x


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """r/s with r = s*a mod m and |r|, s <= sqrt(m/2), if one exists."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)
