from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given

from sumprod import RSet, plunnecke_check, ruzsa_cover, triangle_check, validate_cover
from sumprod.errors import EmptySet, PowerTooLarge

from support import S, ring, ring_and_sets


@given(ring_and_sets(3, max_size=7))
def test_triangle_inequality_always_holds(args):
    _, A, B, C = args
    t = triangle_check(A, B, C)
    assert t.holds and t.lhs == len(A - C) * len(B)


@given(ring_and_sets(2, max_size=8))
def test_cover_validates_in_both_modes(args):
    _, A, B = args
    for mode in ("plus", "minus"):
        w = ruzsa_cover(A, B, mode)
        assert validate_cover(A, B, w)
        assert w.X <= A


def test_cover_of_subgroup_is_one_point():
    H = S("z12", [0, 3, 6, 9])
    w = ruzsa_cover(H, H)
    assert w.X.tolist() == [0] and w.bound == 1


def test_tampered_cover_fails_validation():
    A, B = S("z12", [0, 1, 2, 3]), S("z12", [0, 1])
    w = ruzsa_cover(A, B)
    assert w.X.tolist() == [0, 2]
    assert not validate_cover(A, B, replace(w, X=S("z12", [0])))
    assert not validate_cover(A, B, replace(w, X=S("z12", [0, 1, 2])))
    assert not validate_cover(A, B, replace(w, bound=Fraction(7)))


@given(ring_and_sets(2, max_size=6))
def test_plunnecke_within_budget(args):
    _, A, B = args
    chk = plunnecke_check(A, B, 2, 1)
    assert chk.holds and chk.measured == len(A + A - A)


def test_plunnecke_errors():
    A = S("z7", [1])
    with pytest.raises(PowerTooLarge):
        plunnecke_check(A, A, 5, 4)
    with pytest.raises(EmptySet):
        plunnecke_check(RSet.empty(ring("z7")), A, 1, 1)
