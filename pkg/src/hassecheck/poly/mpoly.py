"""Sparse multivariate polynomials over Q, plus the text grammar.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

Only declared variable names are accepted, ``/`` requires a nonzero constant
divisor, and juxtaposition (implicit multiplication) is a syntax error.
Printing is graded lexicographic in the declared variable order, highest term
first, and reparses to an equal polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm, gcd
from functools import reduce as _fold
from typing import Iterable, Mapping, Sequence

from ..arith import format_rational
from .upoly import UPoly

Exp = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MPoly:
    """Immutable polynomial: ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.vars: tuple[str, ...] = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        clean: dict[Exp, Fraction] = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    # -- construction ---------------------------------------------------

    @classmethod
    def const(cls, variables: Sequence[str], c) -> "MPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MPoly":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"undeclared variable {name!r}")
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["MPoly", ...]:
        return tuple(cls.var(variables, v) for v in variables)

    @classmethod
    def from_upoly(cls, f: UPoly, variables: Sequence[str] | None = None) -> "MPoly":
        variables = tuple(variables or (f.var,))
        i = variables.index(f.var)
        terms = {}
        for k, c in enumerate(f.coeffs):
            e = [0] * len(variables)
            e[i] = k
            terms[tuple(e)] = c
        return cls(variables, terms)

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        e = tuple(monomial.get(v, 0) for v in self.vars)
        unknown = set(monomial) - set(self.vars)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        return self.terms.get(e, Fraction(0))

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}") from None

    # -- ring structure ----------------------------------------------------

    def with_vars(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over a variable list containing every used variable."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        missing = set(self.used_vars()) - set(variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} would be dropped")
        idx = [self.vars.index(v) if v in self.vars else None for v in variables]
        terms = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self.terms.items()}
        return MPoly(variables, terms)

    def _unify(self, other) -> tuple["MPoly", "MPoly"]:
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        if other.vars == self.vars:
            return self, other
        variables = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(variables), other.with_vars(variables)

    def __add__(self, other) -> "MPoly":
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._unify(other)
        terms: dict[Exp, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(a.vars, terms)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division by a non-constant or zero polynomial")
            other = other.constant_value()
        other = Fraction(other)
        return self * (1 / other)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._unify(other)
        return a.terms == b.terms

    def __hash__(self):
        used = self.used_vars()
        return hash(frozenset(self.with_vars(used).terms.items()) | {used})

    # -- calculus and substitution -------------------------------------------

    def derivative(self, var: str) -> "MPoly":
        i = self._index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]
        return MPoly(self.vars, terms)

    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute polynomials (or numbers) for variables; result keeps self.vars
        minus the substituted ones plus any new variables introduced."""
        for v in mapping:
            self._index(v)
        keep = tuple(v for v in self.vars if v not in mapping)
        images = {}
        extra: list[str] = []
        for v, img in mapping.items():
            if isinstance(img, MPoly):
                for w in img.vars:
                    if w not in keep and w not in extra:
                        extra.append(w)
            images[v] = img
        out_vars = keep + tuple(extra)
        result = MPoly(out_vars)
        powers: dict[tuple[str, int], MPoly] = {}

        def power(v: str, k: int) -> MPoly:
            key = (v, k)
            if key not in powers:
                img = images[v]
                img = img.with_vars(out_vars) if isinstance(img, MPoly) else MPoly.const(out_vars, img)
                powers[key] = img**k
            return powers[key]

        keep_idx = [self.vars.index(v) for v in keep]
        for e, c in self.terms.items():
            mono_e = tuple(e[i] for i in keep_idx) + (0,) * len(extra)
            term = MPoly(out_vars, {mono_e: c})
            for i, v in enumerate(self.vars):
                if v in images and e[i]:
                    term = term * power(v, e[i])
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, object]):
        """Exact value at a point; values may be ints, Fractions or QuadElems of one field."""
        missing = [v for v in self.used_vars() if v not in assignment]
        if missing:
            raise ValueError(f"no value for variables {missing}")
        values = [assignment.get(v, 0) for v in self.vars]
        fields = {val.field for val in values if hasattr(val, "field")}
        if len(fields) > 1:
            raise ValueError("assignment mixes different quadratic fields")
        one = next((val for val in values if hasattr(val, "field")), None)
        zero = Fraction(0) if one is None else one.field(0)
        powers: dict[tuple[int, int], object] = {}
        total = zero
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = values[i] ** k
                    term = term * powers[key]
            total = total + term
        return total

    def coeffs_in(self, var: str) -> dict[int, "MPoly"]:
        """Coefficients of powers of ``var`` (as polynomials free of ``var``)."""
        i = self._index(var)
        out: dict[int, dict[Exp, Fraction]] = {}
        for e, c in self.terms.items():
            d = list(e)
            k = d[i]
            d[i] = 0
            out.setdefault(k, {})[tuple(d)] = c
        return {k: MPoly(self.vars, t) for k, t in sorted(out.items())}

    def to_upoly(self, var: str | None = None) -> UPoly:
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: uses {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "u")
        elif set(used) - {var}:
            raise ValueError(f"not univariate in {var}: uses {used}")
        if not self.vars:
            return UPoly([self.constant_value()], var)
        i = self.vars.index(var) if var in self.vars else None
        deg = self.degree(var) if i is not None else 0
        coeffs = [Fraction(0)] * (max(deg, 0) + 1)
        for e, c in self.terms.items():
            coeffs[e[i] if i is not None else 0] += c
        return UPoly(coeffs, var)

    def integer_form(self) -> tuple[dict[Exp, int], Fraction]:
        """(primitive integer terms, scale) with self = scale * integer polynomial."""
        if not self.terms:
            return {}, Fraction(0)
        den = _fold(lcm, (c.denominator for c in self.terms.values()), 1)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = _fold(gcd, ints.values(), 0)
        return {e: c // g for e, c in ints.items()}, Fraction(g, den)

    # -- printing ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MPoly({self.vars}, {format_poly(self)!r})"


def format_poly(p: MPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in p.sorted_terms():
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, e) if k)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = "num" if m.group(1) else "name" if m.group(2) else "op"
        value = m.group(m.lastindex)
        tokens.append((kind, "^" if value == "**" else value, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text: str, variables: Sequence[str]) -> MPoly:
    """Parse the polynomial grammar over the declared ``variables``."""
    variables = tuple(variables)
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expect(value: str):
        kind, v, pos = take()
        if v != value or kind == "end":
            raise ParseError(f"expected {value!r}", pos)

    def expr() -> MPoly:
        node = term()
        while peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term() -> MPoly:
        node = unary()
        while peek()[0] == "op" and peek()[1] in ("*", "/"):
            op, pos = take()[1:]
            rhs = unary()
            if op == "*":
                node = node * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division by a non-constant or zero expression", pos)
                node = node / rhs
        return node

    def unary() -> MPoly:
        if peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            node = unary()
            return -node if op == "-" else node
        return power()

    def power() -> MPoly:
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, v, pos = take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return base ** int(v)
        return base

    def atom() -> MPoly:
        kind, v, pos = take()
        if kind == "num":
            return MPoly.const(variables, int(v))
        if kind == "name":
            if v not in variables:
                raise ParseError(f"undeclared variable {v!r}", pos)
            return MPoly.var(variables, v)
        if v == "(":
            node = expr()
            expect(")")
            return node
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected {v!r}", pos)

    result = expr()
    kind, v, pos = peek()
    if kind != "end":
        raise ParseError(f"unexpected {v!r} (implicit multiplication is not allowed)", pos)
    return result


def poly_vars(*names: str) -> tuple[MPoly, ...]:
    return MPoly.gens(names)


def from_terms(variables: Sequence[str], terms: Iterable[tuple[Exp, object]]) -> MPoly:
    acc: dict[Exp, Fraction] = {}
    for e, c in terms:
        acc[e] = acc.get(e, 0) + Fraction(c)
    return MPoly(variables, acc)
