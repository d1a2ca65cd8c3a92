"""Dense univariate polynomials over Q.

Heavy operations (gcd, squarefree part, rational roots) run on the primitive
integer form with modular algorithms and are certified by exact arithmetic
before returning.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Sequence

from ..arith import format_rational, is_prime
from . import modular as pm


class UPoly:
    """c0 + c1*x + ... + cn*x^n with Fraction coefficients, stored low to high."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable = (), var: str = "u"):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def from_roots(cls, roots, var: str = "u") -> "UPoly":
        out = cls([1], var)
        for r in roots:
            out = out * cls([-Fraction(r), 1], var)
        return out

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "u") -> "UPoly":
        return cls([0] * k + [c], var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other) -> "UPoly":
        return other if isinstance(other, UPoly) else UPoly([other], self.var)

    def __add__(self, other) -> "UPoly":
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "UPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "UPoly":
        return (-self) + other

    def __mul__(self, other) -> "UPoly":
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return UPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        result = UPoly([1], self.var)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        quot = [Fraction(0)] * max(len(rem) - d, 0)
        inv = 1 / other.lc
        while len(rem) - 1 >= d and rem:
            q = rem[-1] * inv
            shift = len(rem) - 1 - d
            quot[shift] = q
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= q * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UPoly(quot, self.var), UPoly(rem, self.var)

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "UPoly":
        if not self.coeffs:
            raise ValueError("zero polynomial has no monic form")
        return UPoly([c / self.lc for c in self.coeffs], self.var)

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def integer_form(self) -> tuple[list[int], Fraction]:
        """(primitive integer coefficients with positive lc, scale) with self = scale * prim."""
        if not self.coeffs:
            return [], Fraction(0)
        den = _fold(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = _fold(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints], Fraction(g, den)

    def primitive(self) -> "UPoly":
        """Primitive integer polynomial with positive leading coefficient."""
        return UPoly(self.integer_form()[0], self.var)

    def same_up_to_scalar(self, other: "UPoly") -> bool:
        return self.primitive().coeffs == other.primitive().coeffs

    def __str__(self) -> str:
        from .mpoly import MPoly

        return str(MPoly.from_upoly(self))

    def __repr__(self) -> str:
        return f"UPoly({self})"

    def coefficient_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


# -- integer polynomial helpers (lists low->high) -----------------------------


def _zz_content(a: Sequence[int]) -> int:
    return _fold(gcd, a, 0)


def zz_exact_quotient(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """a / b over Z if b divides a exactly, else None."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [] if not a else None
    quot = [0] * (len(a) - db)
    lb = b[-1]
    while a and len(a) - 1 >= db:
        q, r = divmod(a[-1], lb)
        if r:
            return None
        shift = len(a) - 1 - db
        quot[shift] = q
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    if a:
        return None
    return quot


def zz_gcd(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """gcd of integer polynomials, primitive with positive lc (modular + verified)."""
    f, g = pm.trim(list(f)), pm.trim(list(g))
    if not f:
        return _normalize(g)
    if not g:
        return _normalize(f)
    cf, cg = _zz_content(f), _zz_content(g)
    f = [c // cf for c in f]
    g = [c // cg for c in g]
    if len(f) == 1 or len(g) == 1:
        return [1]
    best_deg = None
    acc: list[int] = []
    modulus = 1
    used = 0
    next_check = 1
    for p in pm.big_primes():
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        h = pm.pm_gcd(f, g, p)
        d = len(h) - 1
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg, acc, modulus, used, next_check = d, h, p, 1, 1
        elif d > best_deg:
            continue
        else:
            acc = [pm.crt_pair(r, modulus, s, p) for r, s in zip(acc, h)]
            modulus *= p
            used += 1
        if used < next_check:
            continue
        next_check *= 2
        cand = [pm.rational_reconstruct(c, modulus) for c in acc]
        if any(c is None for c in cand):
            continue
        G = UPoly(cand).integer_form()[0]
        if zz_exact_quotient(f, G) is not None and zz_exact_quotient(g, G) is not None:
            return G
    raise AssertionError("unreachable")


def _normalize(a: list[int]) -> list[int]:
    if not a:
        return []
    c = _zz_content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


# -- public operations ---------------------------------------------------------


def gcd_upoly(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd (zero only if both inputs are zero)."""
    if p.is_zero() and q.is_zero():
        return UPoly([], p.var)
    g = zz_gcd(p.integer_form()[0], q.integer_form()[0])
    return UPoly(g, p.var).monic()


def gcd_many(polys: Iterable[UPoly]) -> UPoly | None:
    """Primitive gcd of several polynomials; None if all are zero."""
    acc: list[int] | None = None
    var = "u"
    for f in polys:
        var = f.var
        if f.is_zero():
            continue
        ints = f.integer_form()[0]
        acc = ints if acc is None else zz_gcd(acc, ints)
        if len(acc) == 1:
            return UPoly([1], var)
    return None if acc is None else UPoly(acc, var)


def squarefree_part_upoly(p: UPoly) -> UPoly:
    """Product of the distinct irreducible factors, as a primitive integer polynomial."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    f = p.integer_form()[0]
    if len(f) <= 2:
        return UPoly(f, p.var)
    df = [i * c for i, c in enumerate(f)][1:]
    g = zz_gcd(f, df)
    q = zz_exact_quotient(f, g)
    assert q is not None
    return UPoly(_normalize(q), p.var)


def divides(p: UPoly, q: UPoly) -> bool:
    """Whether p divides q exactly in Q[x]."""
    if p.is_zero():
        return q.is_zero()
    if q.is_zero():
        return True
    return zz_exact_quotient(q.integer_form()[0], p.integer_form()[0]) is not None


def exact_div(q: UPoly, p: UPoly) -> UPoly:
    """q / p, raising if p does not divide q."""
    qi, qs = q.integer_form()
    pi, ps = p.integer_form()
    out = zz_exact_quotient(qi, pi)
    if out is None:
        raise ValueError("polynomial does not divide")
    return UPoly([Fraction(c) * qs / ps for c in out], q.var)


def lcm_squarefree(polys: Iterable[UPoly], var: str = "u") -> UPoly:
    """Squarefree polynomial whose roots are the union of the inputs' roots."""
    out = UPoly([1], var)
    for f in polys:
        if f.degree <= 0:
            continue
        f = squarefree_part_upoly(f)
        g = gcd_upoly(out, f)
        out = out * exact_div(f, g)
    return out.primitive() if out.degree > 0 else UPoly([1], var)


def _small_split_prime(f: list[int]) -> int:
    """A prime not dividing lc(f) modulo which f stays squarefree."""
    df = [i * c for i, c in enumerate(f)][1:]
    p = 1000
    while True:
        p += 1
        if not is_prime(p) or f[-1] % p == 0:
            continue
        if len(pm.pm_gcd(f, df, p)) == 1:
            return p


def rational_roots(p: UPoly) -> list[Fraction]:
    """All rational roots, sorted.

    A rational root a/b in lowest terms has b | lc and a | c0, so it reduces to
    a simple root modulo a prime l with l not dividing lc*disc. Each root mod l
    is lifted l-adically until l^k > 2*max(|c0|, |lc|)^2, rationally reconstructed and
    tested exactly; this finds every rational root without factoring c0 or lc.
    """
    if p.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    f = squarefree_part_upoly(p).coeffs
    f = [int(c) for c in f]
    roots: list[Fraction] = []
    if f and f[0] == 0:
        roots.append(Fraction(0))
        f = f[1:]
    if len(f) <= 1:
        return roots
    if len(f) == 2:
        roots.append(Fraction(-f[0], f[1]))
        return sorted(roots)
    ell = _small_split_prime(f)
    df = [i * c for i, c in enumerate(f)][1:]
    bound = 2 * max(abs(f[0]), abs(f[-1])) ** 2
    for r0 in range(ell):
        if pm.pm_eval(f, r0, ell):
            continue
        r, mod = r0, ell
        while mod <= bound:
            mod = mod * mod
            r = (r - pm.pm_eval(f, r, mod) * pow(pm.pm_eval(df, r, mod), -1, mod)) % mod
        cand = pm.rational_reconstruct(r, mod)
        if cand is not None and UPoly(f)(cand) == 0:
            roots.append(cand)
    return sorted(roots)
