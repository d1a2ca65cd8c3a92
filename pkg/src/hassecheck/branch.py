"""Singular fibres of the pencil and the branch locus of gamma.

For each affine chart of the product of projective lines, the pencil
F = u0*g + f and its two partial derivatives are eliminated down to a
polynomial in u0 (chart u1 = 1). The result is compared against pinned
factor lists by exact division; the smoothness certificate is that no
singular-fibre parameter is a branch value of gamma.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .construct import U_VARS, SurfaceFamily, Variant
from .elliptic import W, CurveData
from .poly import (
    MPoly,
    UPoly,
    divides,
    eliminate_two,
    exact_div,
    format_poly,
    gcd_upoly,
    lcm_squarefree,
    parse_poly,
    rational_roots,
    resultant,
)
from .poly.elim import EliminationTrace

PIN_ENV = "OBSTRUCTION_PIN_DIR"
U = "u0"

ProjPoint = tuple[int, int]
Progress = Callable[[str], None]


class Chart(str, Enum):
    """Affine pieces; the value names the coordinates set to 1."""

    X1Y1 = "X1Y1"
    X1Y0 = "X1Y0"
    X0Y1 = "X0Y1"
    X0Y0 = "X0Y0"
    P2chart = "P2chart"

    @property
    def dehomogenization(self) -> dict[str, int]:
        if self is Chart.P2chart:
            return {"x2": 1}
        return {f"x{self.value[1]}": 1, f"y{self.value[3]}": 1}

    @property
    def affine_coords(self) -> tuple[str, str]:
        if self is Chart.P2chart:
            return ("x0", "x1")
        x = "x1" if self.value[1] == "0" else "x0"
        y = "y1" if self.value[3] == "0" else "y0"
        return (x, y)

    @classmethod
    def parse(cls, text: str) -> "Chart":
        for c in cls:
            if c.value.lower() == text.strip().lower():
                return c
        raise ValueError(f"unknown chart {text!r}")


HASSE_CHARTS = (Chart.X1Y1, Chart.X1Y0, Chart.X0Y1, Chart.X0Y0)


def charts_for(variant: Variant) -> tuple[Chart, ...]:
    return HASSE_CHARTS if variant is Variant.HASSE else (Chart.P2chart,)


def format_point(pt: ProjPoint) -> str:
    return f"({pt[0]}:{pt[1]})"


def point_of(r: Fraction | None) -> ProjPoint:
    """(a:b) with b > 0 for a finite value, (1:0) for None."""
    if r is None:
        return (1, 0)
    r = Fraction(r)
    return (r.numerator, r.denominator)


def _point_key(pt: ProjPoint):
    return (pt[1] == 0, Fraction(pt[0], pt[1]) if pt[1] else 0)


# -- pinned factor data ----------------------------------------------------------


@dataclass(frozen=True)
class PinnedFactor:
    chart: str
    text: str
    poly: UPoly

    @property
    def degree(self) -> int:
        return self.poly.degree


def pin_dir() -> Path:
    env = os.environ.get(PIN_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("hassecheck") / "data" / "pins"))


def _read_factor_file(path: Path, chart: str) -> list[PinnedFactor]:
    out = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(PinnedFactor(chart, line, parse_poly(line, [U]).to_upoly(U)))
    return out


def load_manifest(directory: Path | None = None) -> dict:
    directory = directory or pin_dir()
    return json.loads((directory / "manifest.json").read_text())


def load_pins(chart: Chart, directory: Path | None = None) -> list[PinnedFactor]:
    directory = directory or pin_dir()
    entry = load_manifest(directory)["charts"].get(chart.value)
    if entry is None:
        return []
    factors = _read_factor_file(directory / entry["file"], chart.value)
    if [f.degree for f in factors] != entry["degrees"]:
        raise ValueError(f"pinned data for {chart.value} disagrees with manifest degrees")
    return factors


def pins_for(family: SurfaceFamily, chart: Chart, directory: Path | None = None) -> list[PinnedFactor]:
    """Pinned factors, but only for the tuple the pinned data were computed from."""
    if family.variant is Variant.HASSE:
        pinned = load_manifest(directory).get("tuple", {})
        t = family.tuple
        if t is None or (t.field.d, list(t.primes)) != (pinned.get("d"), pinned.get("primes")):
            return []
    return load_pins(chart, directory)


def load_gamma_pin(directory: Path | None = None) -> UPoly:
    directory = directory or pin_dir()
    entry = load_manifest(directory)["gamma_branch"]
    (factor,) = _read_factor_file(directory / entry["file"], "gamma")
    return factor.poly


# -- Jacobian systems and elimination --------------------------------------------


def jacobian_system(family: SurfaceFamily, chart: Chart) -> tuple[MPoly, MPoly, MPoly]:
    """(F, dF/da, dF/db) on the chart, with u1 = 1 and affine coordinates (a, b)."""
    if chart not in charts_for(family.variant):
        raise ValueError(f"chart {chart.value} does not apply to {family.variant.value}")
    a, b = chart.affine_coords
    F = family.pencil.subs({"u1": 1, **chart.dehomogenization}).with_vars((U, a, b))
    return F, F.derivative(a), F.derivative(b)


@dataclass
class EliminationResult:
    chart: Chart
    eliminant: UPoly
    matched_factors: list[tuple[PinnedFactor, bool]]
    rational_roots: list[Fraction]
    extraneous_remainder: UPoly
    expected_roots: list[Fraction] = field(default_factory=list)
    trace: EliminationTrace = field(default_factory=EliminationTrace)
    seconds: float = 0.0

    @property
    def all_matched(self) -> bool:
        return all(ok for _, ok in self.matched_factors)

    @property
    def expected_roots_present(self) -> bool:
        return set(self.expected_roots) <= set(self.rational_roots)

    def to_json(self) -> dict:
        return {
            "chart": self.chart.value,
            "eliminant_degree": self.eliminant.degree,
            "matched": [{"factor": f.text, "degree": f.degree, "divides": ok} for f, ok in self.matched_factors],
            "rational_roots": [format_point(point_of(r)) for r in self.rational_roots],
            "expected_roots_present": self.expected_roots_present,
            "extraneous_degree": self.extraneous_remainder.degree,
            "extraneous": format_poly(MPoly.from_upoly(self.extraneous_remainder)),
        }


def branch_u0_polynomial(
    family: SurfaceFamily,
    chart: Chart,
    pins: Sequence[PinnedFactor] | None = None,
    progress: Progress | None = None,
) -> EliminationResult:
    start = time.perf_counter()
    system = jacobian_system(family, chart)
    a, b = chart.affine_coords
    trace = EliminationTrace()
    say = (lambda msg: progress(f"[{chart.value}] {msg}")) if progress else None
    elim = eliminate_two(system, U, order=(b, a), progress=say, trace=trace)
    pins = load_pins(chart) if pins is None else list(pins)
    matched = [(pf, divides(pf.poly, elim)) for pf in pins]
    remainder = elim
    for pf, ok in matched:
        if ok and pf.degree > 0 and divides(pf.poly, remainder):
            remainder = exact_div(remainder, pf.poly)
    remainder = remainder.primitive() if remainder.degree > 0 else UPoly([1], U)
    expected = sorted({r for pf in pins if pf.degree == 1 for r in rational_roots(pf.poly)})
    return EliminationResult(
        chart=chart,
        eliminant=elim,
        matched_factors=matched,
        rational_roots=rational_roots(elim),
        extraneous_remainder=remainder,
        expected_roots=expected,
        trace=trace,
        seconds=time.perf_counter() - start,
    )


# -- gamma -------------------------------------------------------------------------


def _gamma_chart(data: CurveData) -> tuple[MPoly, MPoly, MPoly]:
    """E, the level set num - u0*den, and their Jacobian determinant, at w2 = 1."""
    vars3 = (U, "w0", "w1")
    E = data.E_relation.subs({"w2": 1}).with_vars(vars3)
    H = (data.gamma_num - MPoly.var((U,) + W, U) * data.gamma_den).subs({"w2": 1}).with_vars(vars3)
    J = E.derivative("w0") * H.derivative("w1") - E.derivative("w1") * H.derivative("w0")
    return E, H, J


def gamma_branch_polynomial(data: CurveData, progress: Progress | None = None) -> UPoly:
    """Squarefree primitive eliminant of the branch system of gamma (chart w2 = 1)."""
    return eliminate_two(_gamma_chart(data), U, order=("w1", "w0"), progress=progress)


def _no_common_zero(polys: Sequence[MPoly], x: str, y: str) -> bool:
    """Sufficient test that polynomials in (x, y) have no common affine zero."""
    res = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            r = resultant(polys[i], polys[j], y)
            if r.is_zero():
                return False
            res.append(r.to_upoly(x))
    g = res[0]
    for r in res[1:]:
        g = gcd_upoly(g, r)
    return g.degree == 0


def gamma_unramified_over_infinity(data: CurveData) -> bool:
    """Whether (1:0) is not a branch value of gamma.

    Over w2 = 1: no point of E with den = 0 has a vanishing Jacobian
    determinant, and gamma has no base point. The points of E on w2 = 0 are
    handled in the chart w1 = 1, where they must be rational.
    """
    E = data.E_relation.subs({"w2": 1}).with_vars(("w0", "w1"))
    den = data.gamma_den.subs({"w2": 1}).with_vars(("w0", "w1"))
    num = data.gamma_num.subs({"w2": 1}).with_vars(("w0", "w1"))
    J = E.derivative("w0") * den.derivative("w1") - E.derivative("w1") * den.derivative("w0")
    if not _no_common_zero([E, den, J], "w0", "w1"):
        return False
    if not _no_common_zero([E, den, num], "w0", "w1"):
        return False
    # Points with w2 = 0 sit in the chart w1 = 1; the check needs them all rational.
    at_inf = data.E_relation.subs({"w1": 1, "w2": 0})
    if at_inf.is_zero() or not _all_roots_rational(at_inf.to_upoly("w0")):
        return False
    E1 = data.E_relation.subs({"w1": 1}).with_vars(("w0", "w2"))
    den1 = data.gamma_den.subs({"w1": 1}).with_vars(("w0", "w2"))
    num1 = data.gamma_num.subs({"w1": 1}).with_vars(("w0", "w2"))
    J1 = E1.derivative("w0") * den1.derivative("w2") - E1.derivative("w2") * den1.derivative("w0")
    for r in rational_roots(at_inf.to_upoly("w0")):
        pt = {"w0": r, "w2": 0}
        if den1.evaluate(pt) == 0 and (J1.evaluate(pt) == 0 or num1.evaluate(pt) == 0):
            return False
    return True


def _all_roots_rational(f: UPoly) -> bool:
    g = f
    for r in rational_roots(f):
        lin = UPoly([-r, 1], f.var)
        while divides(lin, g):
            g = exact_div(g, lin)
    return g.degree == 0


# -- assembling R ------------------------------------------------------------------


@dataclass
class BranchReport:
    variant: str
    results: list[EliminationResult]
    R_points_rational: list[ProjPoint]
    R_polynomial: UPoly
    gamma_branch: UPoly
    gamma_matches_pin: bool
    infinity_unramified: bool
    disjoint: bool
    factor_charts: dict[str, list[str]] = field(default_factory=dict)

    @property
    def all_matched(self) -> bool:
        return all(r.all_matched and r.expected_roots_present for r in self.results)

    @property
    def overall(self) -> bool:
        return self.all_matched and self.disjoint and self.gamma_matches_pin

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "charts": [r.to_json() for r in self.results],
            "R_points_rational": [format_point(p) for p in self.R_points_rational],
            "R_polynomial_degree": self.R_polynomial.degree,
            "gamma_branch": format_poly(MPoly.from_upoly(self.gamma_branch.monic())),
            "gamma_matches_pin": self.gamma_matches_pin,
            "infinity_unramified": self.infinity_unramified,
            "factor_charts": self.factor_charts,
            "disjoint": self.disjoint,
            "overall": self.overall,
        }


def _factor_charts(results: Sequence[EliminationResult]) -> dict[str, list[str]]:
    """For each distinct non-linear pinned factor, the charts whose eliminant it divides."""
    out: dict[str, list[str]] = {}
    seen: dict[str, UPoly] = {}
    for r in results:
        for pf, _ in r.matched_factors:
            if pf.degree > 1:
                seen.setdefault(pf.text, pf.poly)
    for text, poly in seen.items():
        out[text] = [r.chart.value for r in results if divides(poly, r.eliminant)]
    return out


def assemble_R(
    results: Sequence[EliminationResult],
    include_infinity: bool,
    gamma_branch: UPoly,
    curve: CurveData,
    variant: str,
    gamma_pin: UPoly | None = None,
) -> BranchReport:
    """Union the chart data into R and test it against the branch locus of gamma.

    (0:1) and (1:0) join R when ``include_infinity`` is set, since both end
    fibres f = 0 and g = 0 are singular there.
    """
    if not results:
        raise ValueError("no chart results")
    finite: set[Fraction] = set()
    for r in results:
        finite.update(r.rational_roots)
    points = {point_of(x) for x in finite}
    if include_infinity:
        points |= {(0, 1), (1, 0)}
    R_points = sorted(points, key=_point_key)

    nonlinear = [pf.poly for r in results for pf, ok in r.matched_factors if ok and pf.degree > 1]
    R_poly = lcm_squarefree(nonlinear, U)
    extraneous = [r.extraneous_remainder for r in results if r.extraneous_remainder.degree > 0]

    coprime = all(gcd_upoly(p, gamma_branch).degree == 0 for p in [R_poly] + extraneous)
    no_rational_hit = all(gamma_branch(Fraction(p[0], p[1])) != 0 for p in R_points if p[1])
    inf_ok = gamma_unramified_over_infinity(curve)
    inf_needed = any(p[1] == 0 for p in R_points)
    disjoint = coprime and no_rational_hit and (inf_ok or not inf_needed)
    matches_pin = gamma_pin is None or gamma_branch.same_up_to_scalar(gamma_pin)
    return BranchReport(
        variant=variant,
        results=list(results),
        R_points_rational=R_points,
        R_polynomial=R_poly,
        gamma_branch=gamma_branch,
        gamma_matches_pin=matches_pin,
        infinity_unramified=inf_ok,
        disjoint=disjoint,
        factor_charts=_factor_charts(results),
    )


# -- conic pencils -------------------------------------------------------------------


def _quadric_matrix(q: MPoly, coords: Sequence[str]) -> list[list[Fraction]]:
    n = len(coords)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            mono = {a: 2} if i == j else {a: 1, b: 1}
            c = q.coefficient(mono)
            m[i][j] = c if i == j else c / 2
    if q.total_degree() != 2 or any(sum(e) != 2 for e in q.with_vars(coords).terms):
        raise ValueError("not a quadratic form")
    return m


def _det3(m: list[list[MPoly]]) -> MPoly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def conic_pencil_determinant(g: MPoly, f: MPoly, coords: Sequence[str] = ("x0", "x1", "x2")) -> MPoly:
    """det(u0*M_g + u1*M_f), a binary cubic form in (u0, u1)."""
    u0, u1 = MPoly.gens(U_VARS)
    Mg, Mf = _quadric_matrix(g, coords), _quadric_matrix(f, coords)
    M = [[u0 * Mg[i][j] + u1 * Mf[i][j] for j in range(3)] for i in range(3)]
    return _det3(M)


def binary_form_points(form: MPoly) -> list[ProjPoint]:
    """Rational zeros on P^1 of a binary form in (u0, u1)."""
    if form.is_zero():
        raise ValueError("the zero form vanishes everywhere")
    pts = []
    if form.subs({"u1": 0}).is_zero():
        pts.append((1, 0))
    dehom = form.subs({"u1": 1})
    if dehom.total_degree() > 0:
        pts.extend(point_of(r) for r in rational_roots(dehom.to_upoly(U)))
    return sorted(set(pts), key=_point_key)


def conic_pencil_R(family: SurfaceFamily) -> list[ProjPoint]:
    if family.variant is not Variant.WA:
        raise ValueError("conic_pencil_R needs the weak-approximation family")
    return binary_form_points(conic_pencil_determinant(family.g, family.f))


def run_branch(
    family: SurfaceFamily,
    charts: Iterable[Chart] | None = None,
    progress: Progress | None = None,
    jobs: int = 1,
) -> BranchReport:
    """Eliminate on each chart (optionally in worker processes) and assemble R."""
    charts = list(charts or charts_for(family.variant))
    if jobs > 1 and len(charts) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(branch_u0_polynomial, family, c, pins_for(family, c)) for c in charts]
            results = []
            for c, fut in zip(charts, futures):
                results.append(fut.result())
                if progress:
                    progress(f"[{c.value}] done")
    else:
        results = [branch_u0_polynomial(family, c, pins_for(family, c), progress) for c in charts]
    gamma = gamma_branch_polynomial(family.curve)
    return assemble_R(
        results,
        include_infinity=family.variant is Variant.HASSE,
        gamma_branch=gamma,
        curve=family.curve,
        variant=family.variant.value,
        gamma_pin=load_gamma_pin(),
    )
