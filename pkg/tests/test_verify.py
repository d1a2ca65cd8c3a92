import pytest

from hassecheck.construct import PrimeTuple
from hassecheck.local import INF, TWO, Place
from hassecheck.quadfield import QuadField
from hassecheck.verify import sample_places, verify_Zf, verify_Zg, x_block_solvable


def test_Zf_example(example_tuple):
    rep = verify_Zf(example_tuple)
    assert rep.overall
    assert rep.verdict_at(Place(17)).witness == "x0^2 - 13*x1^2"
    assert rep.verdict_at(Place(13)).witness == "x0^2 - 17*x1^2"
    assert rep.generic_argument_ok and rep.K_points_empty and rep.L_points_empty
    assert all(v.solvable for v in rep.critical_verdicts)


def test_Zg_example(example_tuple):
    rep = verify_Zg(example_tuple)
    assert rep.overall
    ob = rep.obstructed
    assert ob.place == Place(41) and not ob.solvable
    assert len(ob.factors) == 5 and not any(ok for _, ok in ob.factors)
    assert rep.verdict_at(INF).witness == "x0^2 - 41*x1^2"
    assert rep.verdict_at(TWO).witness == "x0^2 - 41*x1^2"
    assert rep.verdict_at(Place(3)).witness == "y0^2 - 13*y1^2"
    assert all(v.solvable for v in rep.critical_verdicts + rep.sampled_places)


def test_x_block_everywhere_outside_support():
    for r in sample_places(200, {17, 13}):
        assert x_block_solvable(17, 13, r).solvable


def test_sampling_does_not_decide(example_tuple):
    for n in (0, 5, 50):
        assert verify_Zf(example_tuple, n).overall
        assert verify_Zg(example_tuple, n).overall
    assert verify_Zf(example_tuple, 20).to_json() == verify_Zf(example_tuple, 20).to_json()


def test_solvable_verdicts_carry_witnesses(example_tuple):
    for rep in (verify_Zf(example_tuple), verify_Zg(example_tuple)):
        for v in rep.critical_verdicts + rep.sampled_places:
            assert not v.solvable or v.witness


def test_invalid_tuple_rejected():
    with pytest.raises(ValueError):
        verify_Zf(PrimeTuple(17, 5, 53, 41, 3, 13, field=QuadField(-1)))


def test_searched_tuple_also_verifies():
    t = PrimeTuple(17, 13, 53, 41, 3, 7, field=QuadField(-1))
    assert verify_Zf(t).overall and verify_Zg(t).overall
