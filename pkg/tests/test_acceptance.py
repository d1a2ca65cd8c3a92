"""The ten acceptance criteria. Each prints a PASS/FAIL line in the terminal summary."""

import random
import time
from fractions import Fraction

import pytest

from hassecheck.branch import Chart, conic_pencil_R, gamma_branch_polynomial, load_gamma_pin, run_branch
from hassecheck.construct import check_conditions
from hassecheck.elliptic import default_curve, eval_gamma, nagell_lutz_torsion
from hassecheck.local import INF, TWO, Place, hilbert, hilbert_support
from hassecheck.poly import gcd_upoly, resultant
from hassecheck.quadfield import QuadField
from hassecheck.verify import verify_Zf, verify_Zg
from oracles import hilbert_by_conic_search, resultant_by_interpolation
from test_elim import random_pairs

F = Fraction
criterion = pytest.mark.criterion


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@criterion(1, "example tuple passes every construction condition")
def test_c01_example_tuple(example_tuple):
    with Timer() as t:
        report = check_conditions(example_tuple)
    assert report.overall
    assert report.failed() == []
    assert t.seconds < 1


@criterion(2, "Hilbert product formula and conic-search oracle agreement")
def test_c02_hilbert():
    with Timer() as t:
        rng = random.Random(1)
        for _ in range(10_000):
            a = F(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**6))
            b = F(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**6))
            assert len(hilbert_support(a, b)) % 2 == 0
        for p in [q for q in range(3, 100) if all(q % r for r in range(2, q))]:
            v = Place(p)
            for a in range(-50, 51):
                for b in range(-50, 51):
                    if a and b:
                        assert hilbert(a, b, v) == hilbert_by_conic_search(a, b, p)
    assert t.seconds < 60


@criterion(3, "Z^f is locally solvable everywhere with the expected witnesses and has no K- or L-points")
def test_c03_Zf(example_tuple):
    with Timer() as t:
        rep = verify_Zf(example_tuple)
    assert rep.overall
    assert rep.verdict_at(Place(17)).witness == "x0^2 - 13*x1^2"
    assert rep.verdict_at(Place(13)).witness == "x0^2 - 17*x1^2"
    assert rep.generic_argument_ok and rep.K_points_empty and rep.L_points_empty
    assert t.seconds < 1


@criterion(4, "Z^g fails only at 41, with all five factors negative there")
def test_c04_Zg(example_tuple):
    with Timer() as t:
        rep = verify_Zg(example_tuple)
    ob = rep.obstructed
    assert ob is not None and ob.place == Place(41) and not ob.solvable
    assert len(ob.factors) == 5 and not any(ok for _, ok in ob.factors)
    assert all(v.solvable for v in rep.critical_verdicts + rep.sampled_places)
    assert {v.place for v in rep.critical_verdicts} >= {INF, TWO, Place(3), Place(13)}
    assert rep.overall
    assert t.seconds < 1


@criterion(5, "gamma branch polynomial is the pinned degree-12 polynomial")
def test_c05_gamma_branch():
    with Timer() as t:
        g = gamma_branch_polynomial(default_curve(QuadField(-1)))
    m = g.monic()
    assert g.degree == 12
    assert m[10] == F(60627, 4913)
    assert m[0] == F(-4112, 132651)
    assert m == load_gamma_pin().monic()
    assert t.seconds < 60


@criterion(6, "conic pencil R = {(0:1), (1:1), (-1:1)} by determinant and by elimination")
def test_c06_conic_pencil(wa_family):
    with Timer() as t:
        det_route = conic_pencil_R(wa_family)
        jac_route = run_branch(wa_family).R_points_rational
    assert det_route == [(-1, 1), (0, 1), (1, 1)]
    assert jac_route == det_route
    assert t.seconds < 10


@criterion(7, "every pinned chart factor divides its eliminant; chart rational roots present")
def test_c07_pinned_chart_factors(hasse_branch):
    expected = {
        Chart.X1Y1: {F(0), F(-10553413, 620289)},
        Chart.X1Y0: {F(0), F(-48841, 15129)},
        Chart.X0Y1: {F(0), F(-2809, 533)},
        Chart.X0Y0: {F(0), F(-1)},
    }
    assert [r.chart for r in hasse_branch.results] == list(expected)
    for r in hasse_branch.results:
        assert sorted(pf.degree for pf, _ in r.matched_factors) == [1, 1, 4, 6, 24]
        assert all(ok for _, ok in r.matched_factors), r.chart
        assert expected[r.chart] <= set(r.rational_roots)
    union = {F(a, b) for a, b in hasse_branch.R_points_rational if b}
    assert union == {F(0), F(-10553413, 620289), F(-48841, 15129), F(-2809, 533), F(-1)}
    assert hasse_branch.elapsed < 30 * 60


@criterion(8, "singular-fibre locus misses the branch locus of gamma, for both surfaces")
def test_c08_smoothness(hasse_branch, wa_family):
    with Timer() as t:
        wa = run_branch(wa_family)
    for rep in (hasse_branch, wa):
        gb = rep.gamma_branch
        for r in rep.results:
            for pf, ok in r.matched_factors:
                assert ok and gcd_upoly(pf.poly, gb).degree == 0
            assert gcd_upoly(r.extraneous_remainder, gb).degree == 0
        assert all(gb(F(a, b)) != 0 for a, b in rep.R_points_rational if b)
        assert rep.infinity_unramified and rep.disjoint
    assert t.seconds < 60


@criterion(9, "E has trivial torsion; gamma sends the known points to (1:0) and (0:1)")
def test_c09_torsion():
    with Timer() as t:
        L = QuadField(-1)
        curve = default_curve(L)
        i = L.sqrt_d
        assert nagell_lutz_torsion(0, -16) == set()
        assert eval_gamma((L(0), L(1), L(0)), curve) == (1, 0)
        assert eval_gamma((L(0), 4 * i, L(1)), curve) == (0, 1)
        assert eval_gamma((L(0), -4 * i, L(1)), curve) == (0, 1)
    assert t.seconds < 1


@criterion(10, "resultant agrees with the evaluation-interpolation oracle on 200 random pairs")
def test_c10_resultant_oracle():
    pairs = random_pairs(seed=99, count=200)
    assert len(pairs) == 200
    with Timer() as t:
        for p, q in pairs:
            others = tuple(v for v in p.vars if v != "x")
            assert dict(resultant(p, q, "x").with_vars(others).terms) == resultant_by_interpolation(p, q, "x")
    assert t.seconds < 60
