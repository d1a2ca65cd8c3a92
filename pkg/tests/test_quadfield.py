import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hassecheck.quadfield import (
    QuadField,
    Splitting,
    is_cube_in_L,
    is_square_in_L,
    quad_add,
    quad_conj,
    quad_inv,
    quad_mul,
    quad_norm,
    splits_completely_multiquadratic,
    splits_in_L,
)

ODD_PRIMES_500 = [p for p in range(3, 500) if all(p % q for q in range(2, int(p**0.5) + 1))]
rationals = st.builds(Fraction, st.integers(-1000, 1000), st.integers(1, 1000))
fields = st.sampled_from([-1, 2, -3, 5, 13, -7]).map(QuadField)


@st.composite
def elems(draw, field=None):
    L = field or draw(fields)
    return L(draw(rationals), draw(rationals))


def test_field_normalization():
    assert QuadField(-4).d == -1
    assert QuadField(12).d == 3
    for bad in (0, 1, 4, 9):
        with pytest.raises(ValueError, match="squarefree|nonzero"):
            QuadField(bad)


@given(fields.flatmap(lambda L: st.tuples(elems(L), elems(L))))
def test_norm_multiplicative(pair):
    x, y = pair
    assert quad_norm(quad_mul(x, y)) == quad_norm(x) * quad_norm(y)


@given(fields.flatmap(lambda L: st.tuples(elems(L), elems(L), elems(L))))
def test_field_axioms(triple):
    x, y, z = triple
    assert quad_mul(x, quad_add(y, z)) == quad_add(quad_mul(x, y), quad_mul(x, z))
    assert quad_mul(quad_mul(x, y), z) == quad_mul(x, quad_mul(y, z))
    if x:
        assert quad_mul(x, quad_inv(x)) == 1
    assert quad_mul(x, quad_conj(x)) == quad_norm(x)


def test_sqrt_d_squares_to_d():
    L = QuadField(-1)
    assert L.sqrt_d * L.sqrt_d == -1
    with pytest.raises(ValueError):
        L(1) + QuadField(2)(1)


def test_splitting_vs_brute_force():
    for d in (-1, 2, -3, 5, 13, -7, 10):
        L = QuadField(d)
        for p in ODD_PRIMES_500:
            kind = splits_in_L(p, L)
            has_root = any((x * x - d) % p == 0 for x in range(p))
            if d % p == 0:
                assert kind is Splitting.RAMIFIED
            else:
                assert (kind is Splitting.SPLIT) == has_root


def test_splitting_examples():
    L = QuadField(-1)
    assert splits_in_L(17, L) is Splitting.SPLIT
    assert splits_in_L(3, L) is Splitting.INERT
    assert splits_in_L(2, L) is Splitting.RAMIFIED
    assert splits_in_L(2, QuadField(17)) is Splitting.SPLIT
    assert splits_in_L(2, QuadField(5)) is Splitting.INERT
    assert splits_completely_multiquadratic(53, [17, 13], L)
    assert not splits_completely_multiquadratic(29, [17, 13], L)


def _brute_square_in_L(n: Fraction, L: QuadField) -> bool:
    """Search x = (A + B sqrt d)/den with den <= 20, |A|, |B| <= 60, in integers."""
    d = L.d
    for den in range(1, 21):
        target = n * den * den
        if target.denominator != 1:
            continue
        t = target.numerator
        for A in range(-60, 61):
            for B in range(0, 61):
                if A * B == 0 and A * A + d * B * B == t:
                    return True
    return False


def test_is_square_in_L_vs_brute_force():
    rng = random.Random(11)
    for _ in range(100):
        L = QuadField(rng.choice([-1, 2, -3, 5]))
        base = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        n = rng.choice([base * base, base * base * L.d, base * rng.choice([2, 3, 5, 7, -1, -2])])
        assert is_square_in_L(n, L) == _brute_square_in_L(n, L), (n, L.d)


def test_cubes_and_squares_in_L():
    L = QuadField(-1)
    assert is_square_in_L(-1, L) and is_square_in_L(-4, L)
    assert not is_square_in_L(13, L) and not is_square_in_L(17 * 13, L)
    assert is_cube_in_L(Fraction(8, 27), L) and not is_cube_in_L(53, L)
