from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sumprod import (
    ZeroDivisorRich,
    affine_zero_divisor_search,
    algebra_experiment,
    cyclic_ring_experiment,
    division_ring_experiment,
    m2_annihilator_spaces,
    product_ring_experiment,
    validate_certificate,
)
from sumprod.errors import NotCyclicPrimePower, NotDivisionRing, NotM2, NotPrimeFieldAlgebra, NotProductOfFields
from sumprod.special import (
    max_zero_divisor_dim,
    projection_profile,
    rref_basis,
    validate_affine_witness,
    zero_divisor_subspaces,
)

from support import S, b_is_zero_divisor, f2_subspaces_all_zero_divisors, ring, subsets


@given(st.sampled_from(["z7", "gf8", "gf9"]).flatmap(lambda n: subsets(n, 1, 6)))
def test_division_certificates_validate(A):
    res = division_ring_experiment(A)
    assert 0 not in res.subject
    if res.certificate is not None and res.subject:
        assert validate_certificate(res.subject, res.certificate)


@given(st.sampled_from(["f3xf3", "f2xf3", "f5xf5"]).flatmap(lambda n: subsets(n, 1, 6)))
def test_product_experiment_branches(A):
    res = product_ring_experiment(A)
    if res.branch == "i":
        assert isinstance(res.certificate, ZeroDivisorRich)
        assert res.details["sum_with_kernel"] >= res.details["projection_bound"]
    else:
        assert not (res.subject.mask & A.ring.zero_divisor_mask).any()
        if res.certificate is not None:
            assert validate_certificate(res.subject, res.certificate)


def test_product_zero_divisor_fixture():
    res = product_ring_experiment(S("f3xf3", [4, 5]))
    assert res.branch == "i" and res.certificate.ratio >= 1
    assert res.details["factor"] == 1  # differences (1,0), (2,0) vanish on factor 1


def test_projection_profile():
    prof = projection_profile(S("f3xf3", [4, 5, 7]))  # (1,1), (2,1), (1,2)
    assert prof.image_sizes == (2, 2)


def test_cyclic_fixtures():
    r = ring("z9")
    i = cyclic_ring_experiment(S(r, [0, 3, 6]))
    assert i.branch == "i" and i.details["exact"] and i.details["cover"]["X"] == [0]
    ii = cyclic_ring_experiment(S(r, [1, 2, 4, 5, 7, 8]))
    assert ii.branch == "ii" and Fraction(ii.details["density"]) == Fraction(2, 3)


def test_rref_basis_is_canonical():
    assert rref_basis([3, 1, 2], 2, 2) == (1, 2)
    assert rref_basis([6, 3], 3, 3) == rref_basis([3], 3, 3) == (3,)


@pytest.mark.parametrize("name", ["m2f2", "f2xf2", "gf4", "f2xf2xf2"])
def test_subspaces_match_brute_force(name):
    r = ring(name)
    spaces = zero_divisor_subspaces(r)
    for dim in range(1, max_zero_divisor_dim(r) + 2):
        got = {frozenset(s.V.tolist()) for s in spaces if s.dim == dim}
        assert got == f2_subspaces_all_zero_divisors(r, dim)


def test_m2_annihilators():
    for name, count in (("m2f2", 6), ("m2f3", 8)):
        spaces = m2_annihilator_spaces(ring(name))
        assert len(spaces) == count
        assert all(s.dim == 2 and validate_affine_witness(s) for s in spaces)


def test_affine_search_picks_best_overlap():
    r = ring("m2f2")
    # [[0,b],[0,d]] has indices {0, 2, 8, 10}
    A = S(r, [2, 8, 10, 9])
    w = affine_zero_divisor_search(A)
    assert w.V.tolist() == [0, 2, 8, 10] and w.overlap == 3
    assert validate_affine_witness(w)
    assert all(b_is_zero_divisor(r, int(r.add(w.x, v))) for v in w.V)


def test_field_has_no_witness():
    assert affine_zero_divisor_search(S("gf9", [1, 2, 3])) is None


def test_algebra_branch_one():
    res = algebra_experiment(S("f2xf2", [0, 1]))
    assert res.branch == "i" and res.details["witness"]["overlap"] == 2
    assert isinstance(res.certificate, ZeroDivisorRich)


@pytest.mark.parametrize(
    "fn,args,exc",
    [
        (division_ring_experiment, ("z6", [1]), NotDivisionRing),
        (product_ring_experiment, ("z2xz4", [1]), NotProductOfFields),
        (cyclic_ring_experiment, ("z12", [1]), NotCyclicPrimePower),
        (algebra_experiment, ("z4", [1]), NotPrimeFieldAlgebra),
    ],
)
def test_wrong_ring_kinds(fn, args, exc):
    with pytest.raises(exc):
        fn(S(*args))


def test_annihilators_need_m2():
    with pytest.raises(NotM2):
        m2_annihilator_spaces(ring("gf9"))
