from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hassecheck.construct import (
    PrimeTuple,
    SearchExhausted,
    Variant,
    build_surfaces,
    build_wa_surface,
    check_conditions,
    find_prime_tuple,
    tuple_from_json,
    tuple_to_json,
)
from hassecheck.poly import MPoly, resultant
from hassecheck.quadfield import QuadField


def test_example_tuple_passes(example_tuple):
    report = check_conditions(example_tuple)
    assert report.overall and report.failed() == []
    # p6 = p2 in the standard example; this is reported without gating.
    assert report["p6 not in {p1,p2,p3}"] is False


def test_bad_p2_named():
    t = PrimeTuple(17, 5, 53, 41, 3, 13, field=QuadField(-1))
    report = check_conditions(t)
    assert not report.overall
    assert "(p1,p2)_{v_p1}=1" in report.failed()


def test_search_d_minus_one():
    t = find_prime_tuple(QuadField(-1), 300)
    assert t.primes == (17, 13, 53, 41, 3, 7)
    assert check_conditions(t).overall
    assert len(set(t.primes)) == 6


def test_p6_is_smallest_admissible():
    # Smallest prime outside {17,13,53,41,3} with (41/p6) = -1 and (p6/3) = +1.
    from hassecheck.arith import legendre

    cands = [p for p in range(5, 100) if all(p % q for q in range(2, p)) and p not in (17, 13, 53, 41, 3)]
    first = next(p for p in cands if legendre(p, 41) == -1 and legendre(p, 3) == 1)
    assert first == 7


def test_search_other_field():
    t = find_prime_tuple(QuadField(5), 1000)
    assert t.primes == (41, 31, 139, 89, 3, 7)
    assert check_conditions(t).overall


def test_search_exhausted():
    with pytest.raises(SearchExhausted):
        find_prime_tuple(QuadField(-1), 5)


@settings(max_examples=8, deadline=None)
@given(st.sampled_from([-1, 2, -2, 5, -3, 13]), st.integers(200, 600))
def test_search_output_always_valid(d, bound):
    try:
        t = find_prime_tuple(QuadField(d), bound)
    except SearchExhausted:
        return
    assert check_conditions(t).overall
    assert max(t.primes) <= bound


def test_tuple_validation_and_json(example_tuple):
    with pytest.raises(ValueError):
        PrimeTuple(17, 13, 53, 41, 3, 15, field=QuadField(-1))
    with pytest.raises(ValueError):
        PrimeTuple.parse("17,13", QuadField(-1))
    assert tuple_from_json(tuple_to_json(example_tuple)) == example_tuple


def test_surface_shapes(hasse_family):
    fam = hasse_family
    assert fam.variant is Variant.HASSE
    assert fam.f.degree("x0") == 6 and fam.f.degree("y0") == 5
    assert fam.f.coefficient({"x1": 6, "y0": 5}) == -17 * 13 * 221
    assert fam.g.coefficient({"x1": 6, "y0": 5}) == -41 * 3 * 123
    assert len(fam.surface_equations[0].terms) == 80


def test_f_and_g_share_no_x_factor(hasse_family):
    xs = ("x0", "x1")
    fx = hasse_family.f.subs({"y0": 1, "y1": 0})
    gx = hasse_family.g.subs({"y0": 1, "y1": 0})
    r = resultant(fx.subs({"x1": 1}), gx.subs({"x1": 1}), "x0")
    assert not r.is_zero()
    assert set(fx.used_vars()) <= set(xs)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=7, max_size=7))
def test_substitution_identity(hasse_family, vals):
    fam = hasse_family
    env = dict(zip(("w0", "w1", "w2", "x0", "x1", "y0", "y1"), map(Fraction, vals)))
    lhs = fam.surface_equations[0].evaluate(env)
    rhs = fam.curve.gamma_num.evaluate(env) * fam.g.evaluate(env) + fam.curve.gamma_den.evaluate(env) * fam.f.evaluate(env)
    assert lhs == rhs


def test_wa_surface():
    fam = build_wa_surface()
    x0, x1, x2 = MPoly.gens(("x0", "x1", "x2"))
    assert fam.f == x0**2 - x1**2
    assert fam.g == x0**2 + x1**2 - x2**2
    u0, u1 = MPoly.gens(("u0", "u1"))
    assert fam.pencil == u0 * fam.g + u1 * fam.f


def test_build_rejects_invalid_tuple():
    with pytest.raises(ValueError):
        build_surfaces(PrimeTuple(17, 5, 53, 41, 3, 13, field=QuadField(-1)))
