from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given

from sumprod import (
    DilatedSubring,
    Saturated,
    SrConfig,
    Subring,
    ZeroDivisorRich,
    homogeneous_structure_invertible,
    inhomogeneous_structure,
    subring_closure,
    validate_certificate,
)
from sumprod.errors import HypothesisViolated, NoIdentity, NotInvertible
from sumprod.structure import additive_closure, is_subring

from support import S, b_additive_group, b_subring_closure, ring, ring_and_sets

PIN5 = SrConfig(threshold_override=5)


@given(ring_and_sets(1, max_size=4))
def test_closures_match_oracle(args):
    name, G = args
    r = ring(name)
    assert set(subring_closure(G)) == b_subring_closure(r, G)
    assert set(additive_closure(G)) == b_additive_group(r, G)
    assert is_subring(subring_closure(G))


@given(ring_and_sets(1, max_size=6))
def test_inhomogeneous_certificates_validate(args):
    _, A = args
    cert = inhomogeneous_structure(A, cfg=SrConfig(C0=1))
    assert validate_certificate(A, cert)


def test_gf9_prime_subfield():
    A = S("gf9", [1, 2])
    cert = inhomogeneous_structure(A, cfg=PIN5)
    assert isinstance(cert, Subring)
    assert cert.S.tolist() == [0, 1, 2]
    assert cert.pinned_tau == 5 and cert.tau <= 5
    assert subring_closure(A) == cert.S
    assert validate_certificate(A, cert)


def test_untightened_keeps_pinned_threshold():
    # every |xA + A| is at most 4 here, so the pinned S_unit is the whole field
    A = S("gf9", [1, 2])
    cert = inhomogeneous_structure(A, cfg=PIN5, tighten=False)
    assert cert.tau == 5 and len(cert.S) == 9 and cert.pinned_valid


def test_diagonal_is_a_subring():
    A = S("f5xf5", [0, 6, 12, 18, 24])
    cert = inhomogeneous_structure(A, cfg=SrConfig(threshold_override=8))
    assert isinstance(cert, Subring) and cert.S == A and cert.ratio == 1


def test_zero_divisor_rich_and_saturated():
    cert = inhomogeneous_structure(S("f3xf3", [4, 5]))
    assert isinstance(cert, ZeroDivisorRich) and cert.ratio == Fraction(3, 2)
    sat = inhomogeneous_structure(S("z7", [1, 2, 4]))
    assert isinstance(sat, Saturated)
    assert validate_certificate(S("z7", [1, 2, 4]), sat)


def test_dilated_subring_fixture():
    A = S("gf9", [3, 6])
    cert = homogeneous_structure_invertible(A, a=3, cfg=PIN5)
    assert isinstance(cert, DilatedSubring)
    assert (cert.S.tolist(), cert.a, cert.normalizes) == ([0, 1, 2], 3, True)
    assert validate_certificate(A, cert)


def test_non_normalizing_dilate_in_matrix_ring():
    # in M2(F2) conjugating the upper-triangular subring by a swap leaves it
    r = ring("m2f2")
    upper = subring_closure(S(r, [1, 2, 8]))  # E11, E12, E22
    assert len(upper) == 8
    swap = 6
    cert = DilatedSubring(upper, swap, False, Fraction(len(upper), 1))
    A = S(r, [swap])
    assert validate_certificate(A, replace(cert, ratio=Fraction(8, len(A))))
    assert not validate_certificate(A, replace(cert, normalizes=True, ratio=Fraction(8, len(A))))


def test_tampered_certificates_fail():
    A = S("gf9", [1, 2])
    cert = inhomogeneous_structure(A, cfg=PIN5)
    assert not validate_certificate(A, replace(cert, S=S("gf9", [0, 1, 2, 3])))
    assert not validate_certificate(A, replace(cert, ratio=Fraction(1)))
    assert not validate_certificate(A, Saturated(3))


def test_hom_errors():
    with pytest.raises(NoIdentity):
        homogeneous_structure_invertible(S(_no_one(), [1]))
    with pytest.raises(NotInvertible):
        homogeneous_structure_invertible(S("z6", [2, 3]))
    with pytest.raises(ValueError):
        homogeneous_structure_invertible(S("gf9", [1, 2]), a=3)
    with pytest.raises(HypothesisViolated):
        inhomogeneous_structure(S("z11", [1, 2, 3]), K=1)


def _no_one():
    from sumprod import RingSpec, build_ring

    # 2Z/8Z: a ring without identity
    els = [0, 2, 4, 6]
    add = [[els.index((a + b) % 8) for b in els] for a in els]
    mul = [[els.index((a * b) % 8) for b in els] for a in els]
    return build_ring(RingSpec.table(add, mul))
