from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sumprod import (
    RSet,
    additive_energy,
    difference_set,
    dilate,
    growth_report,
    iterated,
    product_set,
    representation_count,
    sumset,
)
from sumprod.errors import EmptySet, RingMismatch, ZeroProductPower

from support import S, b_diff, b_prod, b_sum, ring, ring_and_sets


@given(ring_and_sets(2))
def test_binary_ops_match_oracle(args):
    name, A, B = args
    r = ring(name)
    assert set(sumset(A, B)) == b_sum(r, A, B)
    assert set(difference_set(A, B)) == b_diff(r, A, B)
    assert set(product_set(A, B)) == b_prod(r, A, B)
    assert set(A + B) == set(sumset(A, B))


@given(ring_and_sets(3, max_size=6))
def test_sumset_is_associative_and_commutative(args):
    _, A, B, C = args
    assert (A + B) + C == A + (B + C)
    assert A + B == B + A


@given(ring_and_sets(1), st.integers(0, 3))
def test_iterated_sum_recurrence(args, n):
    _, A = args
    assert iterated(A, n + 1) == iterated(A, n) + A
    assert len(iterated(A, n + 1)) >= len(iterated(A, n))


def test_iterated_edge_cases():
    A = S("z7", [1, 2])
    assert iterated(A, 0).tolist() == [0]
    assert iterated(A, 3, "product").tolist() == [1, 2, 4]
    with pytest.raises(ZeroProductPower):
        iterated(A, 0, "product")


@given(ring_and_sets(1), st.data())
def test_dilates(args, data):
    name, A = args
    r = ring(name)
    x = data.draw(st.integers(0, r.size - 1))
    assert set(dilate(x, A)) == {r.mul(x, a) for a in A}
    assert set(dilate(x, A, "right")) == {r.mul(a, x) for a in A}


def test_dilate_side_matters_in_matrix_ring():
    r = ring("m2f2")
    A = RSet.full(r)
    e11 = 1  # [[1,0],[0,0]]
    assert dilate(e11, A) != dilate(e11, A, "right")


@given(ring_and_sets(2, max_size=8))
def test_energy_and_representations(args):
    name, A, B = args
    r = ring(name)
    reps = {x: representation_count(A, B, x) for x in range(r.size)}
    assert sum(reps.values()) == len(A) * len(B)
    assert additive_energy(A, B) == sum(v * v for v in reps.values())
    # Cauchy-Schwarz: E(A,B) |A+B| >= |A|^2 |B|^2
    assert additive_energy(A, B) * len(A + B) >= (len(A) * len(B)) ** 2


def test_growth_report_fixture():
    rep = growth_report(S("gf9", [1, 2]))
    assert (rep.sumset, rep.difference, rep.product, rep.homogeneous, rep.inhomogeneous) == (3, 3, 2, 3, 3)
    assert rep.K_inhom == Fraction(3, 2)
    assert rep.zero_divisor_count_in_diff == 1  # only 0


def test_errors():
    with pytest.raises(EmptySet):
        growth_report(RSet.empty(ring("z5")))
    with pytest.raises(RingMismatch):
        sumset(S("z5", [1]), S("z7", [1]))
