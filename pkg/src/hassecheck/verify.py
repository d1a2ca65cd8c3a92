"""Local and global point checks for the zero-dimensional curves Z^f and Z^g.

Each of Z^f, Z^g is a union of "lines" in P^1 x P^1 cut out by binary forms
x0^2 - a x1^2 (a point over a field F iff a is a square in F) and
y0^3 - a y1^3 (iff a is a cube in F). Local solvability at a place therefore
reduces to square and cube tests in Q_v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .arith import integer_root, legendre, primes_from
from .construct import PrimeTuple, check_conditions
from .local import INF, TWO, Place, is_cube_in_Qv, is_square_in_Qv
from .quadfield import Splitting, is_cube_in_L, is_square_in_L, splits_in_L

ASSUMPTIONS = ("rank0_E", "rank0_E_twist")
DEFAULT_SAMPLE = 200


@dataclass(frozen=True)
class Factor:
    """A binary form v0^k - a v1^k in the block ``var`` ('x' or 'y')."""

    var: str
    power: int
    a: int

    @property
    def name(self) -> str:
        return f"{self.var}0^{self.power} - {self.a}*{self.var}1^{self.power}"

    def solvable_at(self, v: Place) -> bool:
        return is_square_in_Qv(self.a, v) if self.power == 2 else is_cube_in_Qv(self.a, v)

    def has_point_in(self, t: PrimeTuple) -> tuple[bool, bool]:
        """(has a Q-point, has an L-point)."""
        if self.power == 2:
            return integer_root(self.a, 2) is not None, is_square_in_L(self.a, t.field)
        # A rational cube in a quadratic field is already a rational cube.
        return integer_root(self.a, 3) is not None, is_cube_in_L(self.a, t.field)


@dataclass(frozen=True)
class PlaceVerdict:
    place: Place
    solvable: bool
    witness: Optional[str] = None
    factors: tuple[tuple[str, bool], ...] = ()

    def __post_init__(self):
        if self.solvable and self.witness is None:
            raise ValueError("a solvable verdict needs a witness")

    def to_json(self) -> dict:
        out = {"place": str(self.place), "solvable": self.solvable, "witness": self.witness}
        if self.factors:
            out["factors"] = {name: ok for name, ok in self.factors}
        return out


@dataclass
class VerificationReport:
    variant: str
    critical_verdicts: list[PlaceVerdict]
    generic_argument_ok: bool
    sampled_places: list[PlaceVerdict]
    K_points_empty: bool
    L_points_empty: bool
    obstructed: Optional[PlaceVerdict] = None
    assumptions: tuple[str, ...] = ASSUMPTIONS

    @property
    def overall(self) -> bool:
        critical = all(v.solvable for v in self.critical_verdicts)
        sampled = all(v.solvable for v in self.sampled_places)
        blocked = self.obstructed is None or not self.obstructed.solvable
        return critical and sampled and blocked and self.generic_argument_ok and self.K_points_empty and self.L_points_empty

    def verdict_at(self, v: Place) -> PlaceVerdict:
        for pv in self.critical_verdicts + self.sampled_places + ([self.obstructed] if self.obstructed else []):
            if pv.place == v:
                return pv
        raise KeyError(str(v))

    def failures(self) -> list[str]:
        out = [f"insolvable at {v.place}" for v in self.critical_verdicts + self.sampled_places if not v.solvable]
        if self.obstructed is not None and self.obstructed.solvable:
            out.append(f"solvable at {self.obstructed.place}")
        if not self.generic_argument_ok:
            out.append("generic argument")
        if not self.K_points_empty:
            out.append("K-points")
        if not self.L_points_empty:
            out.append("L-points")
        return out

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "assumptions": list(self.assumptions),
            "critical": [v.to_json() for v in self.critical_verdicts],
            "generic_ok": self.generic_argument_ok,
            "sampled": {"count": len(self.sampled_places), "all_solvable": all(v.solvable for v in self.sampled_places)},
            "kPointsEmpty": self.K_points_empty,
            "lPointsEmpty": self.L_points_empty,
            "overall": self.overall,
        }
        if self.obstructed is not None:
            out["obstructed"] = self.obstructed.to_json()
        return out


def _verdict(factors: Iterable[Factor], v: Place, detail: bool = False) -> PlaceVerdict:
    results = [(f.name, f.solvable_at(v)) for f in factors]
    witness = next((name for name, ok in results if ok), None)
    return PlaceVerdict(v, witness is not None, witness, tuple(results) if detail else ())


def x_block_solvable(q1: int, q2: int, v: Place) -> PlaceVerdict:
    """Whether one of x0^2 - a x1^2, a in (q1, q2, q1 q2), has a Q_v point."""
    return _verdict(_x_block(q1, q2), v)


def _x_block(q1: int, q2: int) -> list[Factor]:
    return [Factor("x", 2, q1), Factor("x", 2, q2), Factor("x", 2, q1 * q2)]


def f_factors(t: PrimeTuple) -> list[Factor]:
    return _x_block(t.p1, t.p2) + [Factor("y", 2, t.p3), Factor("y", 3, t.p3)]


def g_factors(t: PrimeTuple) -> list[Factor]:
    return _x_block(t.p4, t.p5) + [Factor("y", 2, t.p6), Factor("y", 3, t.p4)]


def sample_places(count: int, exclude: Iterable[int]) -> list[Place]:
    """The first ``count`` odd primes outside ``exclude``; deterministic."""
    skip = set(exclude)
    out = []
    for p in primes_from(3):
        if len(out) >= count:
            return out
        if p not in skip:
            out.append(Place(p))
    return out


def _generic_ok(q1: int, q2: int, places: list[Place]) -> bool:
    """Legendre multiplicativity makes one of q1, q2, q1 q2 a square mod r.

    The identity (q1/r)(q2/r) = (q1 q2/r) holds for every odd r not dividing
    q1 q2; we recheck it on the sample so a broken symbol cannot pass silently.
    """
    for v in places:
        r = v.p
        if legendre(q1, r) * legendre(q2, r) != legendre(q1 * q2, r):
            return False
        if not x_block_solvable(q1, q2, v).solvable:
            return False
    return True


def _require_valid(t: PrimeTuple) -> None:
    report = check_conditions(t)
    if not report.overall:
        raise ValueError(f"invalid tuple {t}: fails {report.failed()}")


def verify_Zf(t: PrimeTuple, sample: int = DEFAULT_SAMPLE) -> VerificationReport:
    """Z^f has points at every place of Q, but none over Q or over L."""
    _require_valid(t)
    factors = f_factors(t)
    critical = [_verdict(factors, v) for v in (INF, TWO, Place(t.p1), Place(t.p2), Place(t.p3))]
    sampled_pl = sample_places(sample, {t.p1, t.p2})
    sampled = [_verdict(factors, v) for v in sampled_pl]
    global_pts = [f.has_point_in(t) for f in factors]
    return VerificationReport(
        variant="Zf",
        critical_verdicts=critical,
        generic_argument_ok=_generic_ok(t.p1, t.p2, sampled_pl),
        sampled_places=sampled,
        K_points_empty=not any(k for k, _ in global_pts),
        L_points_empty=not any(lpt for _, lpt in global_pts),
    )


def verify_Zg(t: PrimeTuple, sample: int = DEFAULT_SAMPLE) -> VerificationReport:
    """Z^g has points at every place except v_{p4}, where every factor fails.

    p4 splits in L, so the completions of L above p4 equal Q_{p4}; the local
    obstruction therefore also rules out L-points.
    """
    _require_valid(t)
    factors = g_factors(t)
    critical = [_verdict(factors, v) for v in (INF, TWO, Place(t.p5), Place(t.p6))]
    sampled_pl = sample_places(sample, {t.p4, t.p5})
    sampled = [_verdict(factors, v) for v in sampled_pl]
    blocked = _verdict(factors, Place(t.p4), detail=True)
    split = splits_in_L(t.p4, t.field) is Splitting.SPLIT
    return VerificationReport(
        variant="Zg",
        critical_verdicts=critical,
        generic_argument_ok=_generic_ok(t.p4, t.p5, sampled_pl),
        sampled_places=sampled,
        K_points_empty=not blocked.solvable,
        L_points_empty=not blocked.solvable and split,
        obstructed=blocked,
    )
