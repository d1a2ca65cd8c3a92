"""Resultants of multivariate polynomials and elimination down to one variable.

Resultants are computed modulo word-sized primes on a dense evaluation grid
in the remaining variables, interpolated, and recombined by CRT until the
modulus exceeds twice the a priori coefficient bound ``|P|_1^n * |Q|_1^m``.
The Sylvester determinant with formal degrees commutes with reduction, so no
prime or evaluation point is ever unlucky.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from . import modular as pm
from .mpoly import MPoly
from .upoly import UPoly, gcd_many, squarefree_part_upoly, exact_div, gcd_upoly

Progress = Callable[[str], None]


class DegenerateElimination(ArithmeticError):
    """Every available resultant chain vanished identically."""


def _int_terms(p: MPoly, order: Sequence[str]) -> tuple[list[tuple[tuple[int, ...], int]], Fraction]:
    q = p.with_vars(order)
    terms, scale = q.integer_form()
    return list(terms.items()), scale


def _eval_table(terms, var_pos: int, others: list[int], dims: list[int], m: int, prime: int) -> list[list[int]]:
    """Coefficient lists in the eliminated variable at every grid point."""
    tables = []
    for i, dim in enumerate(dims):
        top = max((e[others[i]] for e, _ in terms), default=0)
        tables.append([[pow(node, k, prime) for k in range(top + 1)] for node in range(dim)])
    red = [(e[var_pos], tuple(e[j] for j in others), c % prime) for e, c in terms]
    out = []
    for point in product(*(range(d) for d in dims)):
        coeffs = [0] * (m + 1)
        for k, eo, c in red:
            val = c
            for i, node in enumerate(point):
                if eo[i]:
                    val = val * tables[i][node][eo[i]] % prime
            coeffs[k] += val
        out.append(pm.trim([c % prime for c in coeffs]))
    return out


def resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Sylvester resultant of p and q with respect to ``var``.

    The result lives over the union of both variable lists minus ``var``.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    variables = p.vars + tuple(v for v in q.vars if v not in p.vars)
    if var not in variables:
        raise ValueError(f"unknown variable {var!r}")
    m, n = p.degree(var) if var in p.vars else 0, q.degree(var) if var in q.vars else 0
    if m == 0 and n == 0:
        raise ValueError(f"{var!r} occurs in neither polynomial")
    out_vars = tuple(v for v in variables if v != var)
    P, sp = _int_terms(p, variables)
    Q, sq = _int_terms(q, variables)
    scale = sp**n * sq**m
    vpos = variables.index(var)
    used = [i for i, v in enumerate(variables) if i != vpos and any(e[i] for e, _ in P + Q)]

    def vdeg(terms, i):
        return max((e[i] for e, _ in terms), default=0)

    dims = [m * vdeg(Q, i) + n * vdeg(P, i) + 1 for i in used]
    bound = sum(abs(c) for _, c in P) ** n * sum(abs(c) for _, c in Q) ** m
    acc: list[int] | None = None
    modulus = 1
    for prime in pm.big_primes():
        ev_p = _eval_table(P, vpos, used, dims, m, prime)
        ev_q = _eval_table(Q, vpos, used, dims, n, prime)
        values = [pm.pm_res(a, b, prime, m, n) for a, b in zip(ev_p, ev_q)]
        coeffs = pm.interpolate_grid(values, dims, prime)
        if acc is None:
            acc = coeffs
        else:
            acc = [pm.crt_pair(r, modulus, s, prime) for r, s in zip(acc, coeffs)]
        modulus *= prime
        if modulus > 2 * bound:
            break
    assert acc is not None
    terms = {}
    for idx, c in zip(product(*(range(d) for d in dims)), acc):
        c = pm.symmetric(c, modulus)
        if c:
            e = [0] * len(out_vars)
            for i, k in zip(used, idx):
                e[out_vars.index(variables[i])] = k
            terms[tuple(e)] = scale * c
    return MPoly(out_vars, terms)


# -- two-step elimination ----------------------------------------------------


@dataclass
class _Split:
    """R(u, x) = c(u) * d(x) * q(u, x); c and d squarefree, q kept whole."""

    c: UPoly
    d: UPoly
    q: MPoly


def _split_content(r: MPoly, keep: str, x: str) -> _Split:
    variables = (keep, x)
    r = r.with_vars(variables)
    by_x = {k: co.to_upoly(keep) for k, co in r.coeffs_in(x).items()}
    c = gcd_many(by_x.values())
    by_x = {k: exact_div(f, c) for k, f in by_x.items()}
    rest = MPoly(variables, {(e, k): v for k, f in by_x.items() for e, v in enumerate(f.coeffs)})
    by_u = {k: co.to_upoly(x) for k, co in rest.coeffs_in(keep).items()}
    d = gcd_many(by_u.values())
    q = MPoly(
        variables,
        {(k, e): v for k, f in by_u.items() for e, v in enumerate(exact_div(f, d).coeffs)},
    )
    c = squarefree_part_upoly(c) if c.degree > 0 else UPoly([1], keep)
    d = squarefree_part_upoly(d) if d.degree > 0 else UPoly([1], x)
    return _Split(c, d, q)


def _pair_eliminant(
    a: _Split, b: _Split, third: _Split | None, keep: str, x: str, progress: Progress | None
) -> UPoly | None:
    """Polynomial in keep vanishing on the projection of {R_a = R_b = 0}; None if degenerate.

    When the x-only parts of R_a and R_b share a factor h(x), every u passes
    the pair test on h = 0, so those points are constrained by the third
    resultant instead: they contribute c_3(u) * Res_x(h, q_3).
    """
    out = a.c * b.c

    def res(pa: MPoly, pb: MPoly) -> MPoly:
        if progress:
            progress(f"resultant in {x}: degrees {pa.degree(x)} x {pb.degree(x)}")
        return resultant(pa, pb, x)

    vars2 = (keep, x)
    if a.d.degree > 0 and b.d.degree > 0:
        h = gcd_upoly(a.d, b.d)
        if h.degree > 0:
            if third is None or gcd_upoly(h, third.d).degree > 0:
                return None
            out = out * third.c
            if third.q.degree(x) > 0:
                r = res(MPoly.from_upoly(h, vars2), third.q)
                if r.is_zero():
                    return None
                if not r.is_constant():
                    out = out * squarefree_part_upoly(r.to_upoly(keep))
    for pa, pb in ((a.d, b.q), (a.q, b.d), (a.q, b.q)):
        pa = MPoly.from_upoly(pa, vars2) if isinstance(pa, UPoly) else pa
        pb = MPoly.from_upoly(pb, vars2) if isinstance(pb, UPoly) else pb
        if pa.degree(x) <= 0 or pb.degree(x) <= 0:
            continue
        r = res(pa, pb)
        if r.is_zero():
            return None
        if r.is_constant():
            continue
        out = out * squarefree_part_upoly(r.to_upoly(keep))
    return squarefree_part_upoly(out) if out.degree > 0 else out.primitive()


@dataclass
class EliminationTrace:
    """Which chains contributed to an eliminant."""

    y_resultants_zero: list[str] = field(default_factory=list)
    pairs_used: list[str] = field(default_factory=list)
    pairs_degenerate: list[str] = field(default_factory=list)


def eliminate_two(
    system: Sequence[MPoly],
    keep: str,
    order: tuple[str, str] | None = None,
    progress: Progress | None = None,
    trace: EliminationTrace | None = None,
) -> UPoly:
    """Squarefree primitive polynomial in ``keep`` vanishing at the ``keep``
    coordinate of every common zero of three polynomials in three variables.

    ``order`` is (first eliminated, second eliminated); by default the
    variable declared last goes first. The y-resultants of equations (1,2)
    serve as pivot paired with (1,3) and (2,3); the pair (1,3)/(2,3) is only
    tried when a pivot pair degenerates. A common x-only factor of a pair is
    resolved against the remaining resultant. Extraneous factors may remain.
    """
    if len(system) != 3:
        raise ValueError("need exactly three polynomials")
    variables: tuple[str, ...] = ()
    for f in system:
        variables += tuple(v for v in f.vars if v not in variables)
    if order is None:
        rest = [v for v in variables if v != keep]
        if len(rest) != 2:
            raise ValueError(f"expected exactly two variables besides {keep!r}, got {rest}")
        order = (rest[1], rest[0])
    y, x = order
    allowed = {keep, x, y}
    for f in system:
        extra = set(f.used_vars()) - allowed
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
    trace = trace if trace is not None else EliminationTrace()
    polys = [f.with_vars((keep, x, y)) for f in system]

    splits: dict[str, _Split | None] = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        name = f"{i + 1}{j + 1}"
        if progress:
            progress(f"resultant in {y}: equations {name}")
        if polys[i].degree(y) <= 0 and polys[j].degree(y) <= 0:
            r = None
        else:
            r = resultant(polys[i], polys[j], y)
        if r is None or r.is_zero():
            trace.y_resultants_zero.append(name)
            splits[name] = None
        else:
            splits[name] = _split_content(r, keep, x)

    candidates: list[UPoly] = []

    def attempt(a: str, b: str, c: str) -> bool:
        sa, sb = splits[a], splits[b]
        if sa is None or sb is None:
            return False
        e = _pair_eliminant(sa, sb, splits[c], keep, x, progress)
        if e is None:
            trace.pairs_degenerate.append(f"{a}/{b}")
            return False
        trace.pairs_used.append(f"{a}/{b}")
        candidates.append(e)
        return True

    ok = [attempt("12", "13", "23"), attempt("12", "23", "13")]
    if not all(ok):
        attempt("13", "23", "12")
    if not candidates:
        raise DegenerateElimination("all resultant chains vanish identically")
    g = candidates[0]
    for e in candidates[1:]:
        g = gcd_upoly(g, e)
    g = UPoly(g.coeffs, keep)
    return squarefree_part_upoly(g) if g.degree > 0 else UPoly([1], keep)
