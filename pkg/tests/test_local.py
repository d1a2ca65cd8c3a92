import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hassecheck.local import INF, TWO, Place, conic_solvable, hilbert, hilbert_support, is_cube_in_Qv, is_square_in_Qv
from oracles import cube_in_Qp_brute, hilbert_by_conic_search, square_in_Qp_brute

ODD_PRIMES_100 = [p for p in range(3, 100) if all(p % q for q in range(2, p))]
PLACES = [INF, TWO] + [Place(p) for p in (3, 5, 7, 13, 17, 41, 53)]

nonzero_rationals = st.builds(
    Fraction, st.integers(-(10**6), 10**6).filter(bool), st.integers(1, 10**6)
)


def test_place_validation():
    with pytest.raises(ValueError):
        Place(15)
    assert str(INF) == "inf" and str(Place(41)) == "41"
    assert Place.parse("inf") == INF


def test_hilbert_matches_conic_search_oracle():
    for p in ODD_PRIMES_100:
        v = Place(p)
        for a in range(-50, 51):
            if a == 0:
                continue
            for b in range(-50, 51):
                if b == 0:
                    continue
                assert hilbert(a, b, v) == hilbert_by_conic_search(a, b, p), (a, b, p)


def test_hilbert_real_and_dyadic_table():
    assert hilbert(-1, -1, INF) == -1
    assert hilbert(-1, 3, INF) == 1
    # (-1,-1)_2 = -1 and (2, 3)_2 = -1, (2, 5)_2 = -1, (2, 7)_2 = 1
    assert hilbert(-1, -1, TWO) == -1
    assert hilbert(2, 3, TWO) == -1
    assert hilbert(2, 5, TWO) == -1
    assert hilbert(2, 7, TWO) == 1
    assert hilbert(17, 13, TWO) == 1


def test_hilbert_example_values():
    assert hilbert(17, 13, Place(17)) == 1
    assert hilbert(41, 3, Place(41)) == -1
    assert hilbert(41, 13, Place(41)) == -1
    assert hilbert(3, 13, Place(3)) == 1


@settings(max_examples=1000, deadline=None)
@given(nonzero_rationals, nonzero_rationals)
def test_product_formula(a, b):
    assert len(hilbert_support(a, b)) % 2 == 0


def test_product_formula_seeded_sweep():
    rng = random.Random(20240601)
    for _ in range(10_000):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**6))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert len(hilbert_support(a, b)) % 2 == 0


@given(nonzero_rationals, nonzero_rationals, st.sampled_from(PLACES))
def test_symmetry(a, b, v):
    assert hilbert(a, b, v) == hilbert(b, a, v)


@given(nonzero_rationals, nonzero_rationals, nonzero_rationals, st.sampled_from(PLACES))
def test_bimultiplicative(a1, a2, b, v):
    assert hilbert(a1 * a2, b, v) == hilbert(a1, b, v) * hilbert(a2, b, v)


@given(nonzero_rationals, nonzero_rationals, nonzero_rationals, st.sampled_from(PLACES))
def test_square_invariance(a, b, c, v):
    assert hilbert(a * c * c, b, v) == hilbert(a, b, v)


@given(nonzero_rationals, nonzero_rationals, st.sampled_from(PLACES))
def test_square_implies_trivial_symbol(a, b, v):
    if is_square_in_Qv(a, v):
        assert hilbert(a, b, v) == 1


@given(nonzero_rationals, nonzero_rationals, st.sampled_from(PLACES))
def test_conic_solvable_is_symbol(a, b, v):
    assert conic_solvable(a, b, v) == (hilbert(a, b, v) == 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_squares_and_cubes_vs_brute_force(p):
    v = Place(p)
    for a in range(-200, 201):
        if a == 0:
            continue
        assert is_square_in_Qv(a, v) == square_in_Qp_brute(a, p), (a, p)
        assert is_cube_in_Qv(a, v) == cube_in_Qp_brute(a, p), (a, p)


def test_squares_and_cubes_rational_and_real():
    assert is_square_in_Qv(Fraction(4, 9), Place(3))
    assert not is_square_in_Qv(Fraction(1, 3), Place(3))
    assert is_square_in_Qv(41, TWO) and is_square_in_Qv(17, TWO)
    assert not is_square_in_Qv(-1, INF)
    assert is_cube_in_Qv(-5, INF)
    assert not is_cube_in_Qv(41, Place(41))


def test_zero_rejected():
    with pytest.raises(ValueError):
        hilbert(0, 3, Place(3))
    with pytest.raises(ValueError):
        is_square_in_Qv(0, TWO)


def test_support_example():
    assert hilbert_support(-1, -1) == [INF, TWO]
    assert hilbert_support(41, 3) == [Place(3), Place(41)]
