from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sumprod import UNIT, SrConfig, compute_sr, verify_sr_properties
from sumprod.errors import EmptySet
from sumprod.sr import SrEngine

from support import S, b_sr, ring, ring_and_sets


@given(ring_and_sets(1, max_size=5), st.data())
def test_sr_matches_oracle(args, data):
    name, A = args
    r = ring(name)
    rr = data.draw(st.one_of(st.just(None), st.integers(0, r.size - 1)))
    tau = data.draw(st.integers(1, r.size))
    got = compute_sr(A, 1, UNIT if rr is None else rr, SrConfig(threshold_override=tau))
    assert set(got.members) == b_sr(r, A, rr, tau)
    assert got.saturated == (tau >= r.size)


@given(ring_and_sets(1, max_size=5), st.integers(1, 20))
def test_sr_is_monotone_in_tau(args, tau):
    _, A = args
    e = SrEngine(A)
    assert e.members(UNIT, tau) <= e.members(UNIT, tau + 1)


@given(ring_and_sets(1, max_size=5))
def test_zero_lies_in_every_sr_once_tau_reaches_card_A(args):
    name, A = args
    e = SrEngine(A)
    for r in range(ring(name).size):
        assert 0 in e.members(r, len(A))


@given(ring_and_sets(1, max_size=4), st.integers(1, 12))
def test_unconditional_properties(args, tau):
    _, A = args
    rep = verify_sr_properties(A, 1, SrConfig(threshold_override=tau))
    assert rep["vi"].passed and rep["vi"].applicable
    assert rep["viii"].passed and rep["viii"].applicable


def test_candidate_thresholds_are_profile_values():
    A = S("gf9", [0, 1, 3])
    e = SrEngine(A)
    cands = e.candidate_thresholds([UNIT])
    assert cands == sorted(set(e.profile(UNIT).tolist()))
    assert cands[0] == 3


def test_sr_of_non_subgroup_is_trivial_at_card_A():
    # xA + A has |A| elements only when A is stable under adding xA
    A = S("gf9", [0, 1, 3])
    assert compute_sr(A, 1, UNIT, SrConfig(threshold_override=3)).members.tolist() == [0]


def test_tau_from_c0():
    assert SrConfig().tau(Fraction(3, 2), 2) == 10
    assert SrConfig(C0=1).tau(2, 3) == 6
    assert SrConfig(threshold_override=7).tau(100, 100) == 7
    with pytest.raises(ValueError):
        SrConfig(C0=0.5)


def test_failing_property_reports_witness_and_min_tau():
    A = S("gf9", [1, 2, 3])
    e = SrEngine(A)
    rep = verify_sr_properties(A, Fraction(5, 3), SrConfig(threshold_override=4), engine=e)
    failed = [p for p in rep.properties.values() if p.passed is False]
    assert failed
    for p in failed:
        assert p.witnesses
        assert p.min_tau is None or p.min_tau in e.candidate_thresholds()


def test_saturated_is_vacuous():
    A = S("z5", [1, 2])
    rep = verify_sr_properties(A, 2, SrConfig(threshold_override=5))
    assert rep.saturated
    assert rep["iii"].passed and "vacuous" in rep["iii"].note


def test_empty_set_rejected():
    with pytest.raises(EmptySet):
        SrEngine(S("z5", []))
