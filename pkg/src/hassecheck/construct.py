"""Prime-tuple conditions, the smallest-first search, and the surface equations."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator

from .arith import is_prime, primes_from
from .elliptic import W, CurveData, default_curve
from .local import TWO, Place, hilbert, is_square_in_Qv
from .poly import MPoly, format_poly, parse_poly
from .quadfield import QuadField, Splitting, splits_completely_multiquadratic, splits_in_L

X_VARS = ("x0", "x1")
Y_VARS = ("y0", "y1")
HASSE_VARS = X_VARS + Y_VARS
WA_VARS = ("x0", "x1", "x2")
U_VARS = ("u0", "u1")


class Variant(str, Enum):
    HASSE = "HasseFailure"
    WA = "WeakApproxFailure"


@dataclass(frozen=True)
class PrimeTuple:
    p1: int
    p2: int
    p3: int
    p4: int
    p5: int
    p6: int
    field: QuadField

    def __post_init__(self):
        for name, p in zip(("p1", "p2", "p3", "p4", "p5", "p6"), self.primes):
            if p == 2 or not is_prime(p):
                raise ValueError(f"{name}={p} is not an odd prime")

    @property
    def primes(self) -> tuple[int, ...]:
        return (self.p1, self.p2, self.p3, self.p4, self.p5, self.p6)

    @classmethod
    def parse(cls, text: str, field: QuadField) -> "PrimeTuple":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 6:
            raise ValueError("a tuple needs exactly six comma-separated primes")
        return cls(*map(int, parts), field=field)

    def __str__(self) -> str:
        return ",".join(map(str, self.primes))


@dataclass(frozen=True)
class Condition:
    name: str
    ok: bool
    gating: bool = True


@dataclass(frozen=True)
class ConditionReport:
    conditions: tuple[Condition, ...]

    @property
    def overall(self) -> bool:
        return all(c.ok for c in self.conditions if c.gating)

    def failed(self) -> list[str]:
        return [c.name for c in self.conditions if c.gating and not c.ok]

    def __getitem__(self, name: str) -> bool:
        for c in self.conditions:
            if c.name == name:
                return c.ok
        raise KeyError(name)

    def to_json(self) -> dict:
        return {c.name: c.ok for c in self.conditions}


# Each slot's checks only look at earlier slots, which lets the search prune.


def _split(p: int, L: QuadField) -> bool:
    return splits_in_L(p, L) is Splitting.SPLIT


def _p1_like(p: int, L: QuadField, tag: str) -> list[Condition]:
    return [
        Condition(f"{tag} > 0 at the real place", p > 0),
        Condition(f"{tag} is a 2-adic square", is_square_in_Qv(p, TWO)),
        Condition(f"{tag} splits in L", _split(p, L)),
    ]


def _slot_conditions(k: int, ps: tuple[int, ...], L: QuadField) -> list[Condition]:
    p = ps[k]
    if k == 0:
        return _p1_like(p, L, "p1")
    if k == 1:
        p1 = ps[0]
        return [
            Condition("p2 != p1", p != p1),
            Condition("(p1,p2)_{v_p1}=1", p != p1 and hilbert(p1, p, Place(p1)) == 1),
            Condition("p2 splits in L", _split(p, L)),
        ]
    if k == 2:
        p1, p2 = ps[:2]
        distinct = p not in (p1, p2)
        ok = distinct and L.d % p != 0 and splits_completely_multiquadratic(p, [p1, p2], L)
        return [
            Condition("p3 not in {p1,p2}", distinct),
            Condition("p3 splits completely in L(sqrt p1, sqrt p2)", ok),
        ]
    if k == 3:
        return _p1_like(p, L, "p4") + [Condition("p4 not in {p1,p2,p3}", p not in ps[:3])]
    if k == 4:
        p4 = ps[3]
        return [
            Condition("p5 not in {p1,...,p4}", p not in ps[:4]),
            Condition("(p4,p5)_{v_p4}=-1", p != p4 and hilbert(p4, p, Place(p4)) == -1),
        ]
    p4, p5 = ps[3], ps[4]
    return [
        Condition("p6 not in {p4,p5}", p not in (p4, p5)),
        Condition("(p4,p6)_{v_p4}=-1", p != p4 and hilbert(p4, p, Place(p4)) == -1),
        Condition("(p5,p6)_{v_p5}=1", p != p5 and hilbert(p5, p, Place(p5)) == 1),
    ]


def check_conditions(t: PrimeTuple) -> ConditionReport:
    """Evaluate every construction condition on a tuple.

    "p6 not in {p1,p2,p3}" is reported but does not gate the verdict: the
    local arguments for Z^f and Z^g never compare p6 with p1..p3, and the
    standard example reuses 13 for both p2 and p6.
    """
    conds: list[Condition] = []
    for k in range(6):
        conds.extend(_slot_conditions(k, t.primes, t.field))
    conds.append(Condition("p6 not in {p1,p2,p3}", t.p6 not in t.primes[:3], gating=False))
    return ConditionReport(tuple(conds))


class SearchExhausted(RuntimeError):
    pass


def find_prime_tuple(L: QuadField, bound: int, progress: Callable[[str], None] | None = None) -> PrimeTuple:
    """Smallest-first (lexicographic) tuple of odd primes <= bound, pairwise distinct."""
    if bound < 3:
        raise ValueError("bound must be at least 3")
    candidates = _odd_primes(bound)

    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        k = len(prefix)
        if k == 6:
            yield prefix
            return
        for p in candidates:
            if p in prefix:
                continue
            ps = prefix + (p,)
            if all(c.ok for c in _slot_conditions(k, ps, L)):
                if progress and k < 2:
                    progress(f"trying prefix {ps}")
                yield from extend(ps)

    for ps in extend(()):
        return PrimeTuple(*ps, field=L)
    raise SearchExhausted(f"no valid tuple with all primes <= {bound}; raise the bound")


def _odd_primes(bound: int) -> list[int]:
    out = []
    for p in primes_from(3):
        if p > bound:
            return out
        out.append(p)
    return out


def tuple_to_json(t: PrimeTuple, report: ConditionReport | None = None) -> dict:
    report = report or check_conditions(t)
    out: dict = {"d": t.field.d}
    out.update({f"p{i + 1}": p for i, p in enumerate(t.primes)})
    out["conditions"] = report.to_json()
    out["overall"] = report.overall
    return out


def tuple_from_json(data: dict) -> PrimeTuple:
    return PrimeTuple(*(int(data[f"p{i}"]) for i in range(1, 7)), field=QuadField(int(data["d"])))


# -- surfaces ------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceFamily:
    variant: Variant
    f: MPoly
    g: MPoly
    pencil: MPoly
    surface_equations: tuple[MPoly, MPoly]
    curve: CurveData
    coords: tuple[str, ...]
    tuple: PrimeTuple | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "f": format_poly(self.f),
            "g": format_poly(self.g),
            "pencil": format_poly(self.pencil),
            "surface": [format_poly(e) for e in self.surface_equations],
        }


def _assemble(variant: Variant, f: MPoly, g: MPoly, coords, curve: CurveData, t=None) -> SurfaceFamily:
    u0, u1 = MPoly.gens(U_VARS)
    pencil = (u0 * g + u1 * f).with_vars(U_VARS + coords)
    pulled = pencil.subs({"u0": curve.gamma_num, "u1": curve.gamma_den}).with_vars(W + coords)
    return SurfaceFamily(variant, f, g, pencil, (pulled, curve.E_relation.with_vars(W + coords)), curve, coords, t)


def build_surfaces(t: PrimeTuple, check: bool = True) -> SurfaceFamily:
    """f, g, the pencil u0*g + u1*f, and the pulled-back surface over E."""
    if check:
        report = check_conditions(t)
        if not report.overall:
            raise ValueError(f"invalid tuple {t}: fails {report.failed()}")
    p1, p2, p3, p4, p5, p6 = t.primes
    f = parse_poly(
        f"(x0^2 - {p1}*x1^2)*(x0^2 - {p2}*x1^2)*(x0^2 - {p1 * p2}*x1^2)"
        f"*(y0^2 - {p3}*y1^2)*(y0^3 - {p3}*y1^3)",
        HASSE_VARS,
    )
    g = parse_poly(
        f"(x0^2 - {p4}*x1^2)*(x0^2 - {p5}*x1^2)*(x0^2 - {p4 * p5}*x1^2)"
        f"*(y0^2 - {p6}*y1^2)*(y0^3 - {p4}*y1^3)",
        HASSE_VARS,
    )
    return _assemble(Variant.HASSE, f, g, HASSE_VARS, default_curve(t.field), t)


def build_wa_surface(L: QuadField | None = None) -> SurfaceFamily:
    """Pencil between the smooth conic x0^2+x1^2=x2^2 and the line pair x0^2=x1^2."""
    f = parse_poly("x0^2 - x1^2", WA_VARS)
    g = parse_poly("x0^2 + x1^2 - x2^2", WA_VARS)
    return _assemble(Variant.WA, f, g, WA_VARS, default_curve(L or QuadField(-1)))


__all__ = [
    "Condition",
    "ConditionReport",
    "PrimeTuple",
    "SearchExhausted",
    "SurfaceFamily",
    "Variant",
    "build_surfaces",
    "build_wa_surface",
    "check_conditions",
    "find_prime_tuple",
    "tuple_from_json",
    "tuple_to_json",
]
