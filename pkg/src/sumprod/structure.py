"""Subring certificates from the inhomogeneous and unital homogeneous pipelines.

Both pipelines read the candidate subring off ``S_UNIT`` (see
:mod:`sumprod.sr`). The threshold ``tau`` is pinned by the caller; when
``tighten`` is on, the pipeline returns the certificate at the smallest
threshold that yields a valid one, scanning the distinct values of
``x -> |x·A + A|``. The pinned value and whether it was valid are kept in the
certificate.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .certificates import (
    DilatedSubring,
    Saturated,
    Subring,
    ZeroDivisorRich,
    as_fraction,
    default_zd_threshold,
    zero_divisor_branch,
)
from .errors import EmptySet, HypothesisViolated, NoIdentity, NotInvertible
from .rings import inverse
from .sets import RSet
from .setops import difference_set, growth_report, product_set, sumset
from .sr import UNIT, SrConfig, SrEngine


def cyclic_subgroup(ring, g: int) -> np.ndarray:
    """Indices of the additive subgroup generated by ``g``."""
    out = [0]
    x = int(g)
    while x != 0:
        out.append(x)
        x = int(ring._add(x, g))
    return np.asarray(out, dtype=np.int64)


def additive_closure(G: RSet) -> RSet:
    """The additive subgroup generated by ``G`` (``{0}`` when ``G`` is empty)."""
    ring = G.ring
    span = RSet.zero(ring)
    for g in G.indices:
        if not span.mask[g]:
            span = sumset(span, RSet.from_indices(ring, cyclic_subgroup(ring, g)))
    return span


def subring_closure(G: RSet) -> RSet:
    """Smallest subset containing ``G ∪ {0}`` closed under ``+``, ``-`` and ``·``."""
    S = additive_closure(G)
    while True:
        P = product_set(S, S)
        if P <= S:
            return S
        S = additive_closure(S | P)


def is_subring(S: RSet) -> bool:
    if 0 not in S:
        return False
    return difference_set(S, S) <= S and product_set(S, S) <= S


def _check_growth(K, measured, label):
    if measured > K:
        raise HypothesisViolated(f"{label} = {measured} exceeds K = {K}")


def _scan(engine: SrEngine, pinned: int, valid) -> tuple[int | None, RSet | None, bool]:
    """Return (tau, S, pinned_valid) for the smallest candidate threshold passing ``valid``."""
    N = engine.ring.size
    pinned_S = engine.members(UNIT, pinned)
    pinned_ok = bool(valid(pinned_S))
    for t in engine.candidate_thresholds([UNIT]):
        if t >= N:
            break
        S = engine.members(UNIT, t)
        if valid(S):
            return t, S, pinned_ok
    return None, None, pinned_ok


def inhomogeneous_structure(A: RSet, K=None, cfg: SrConfig = SrConfig(), zd_threshold=None, tighten: bool = True):
    """Zero-divisor-rich, ``Subring`` or ``Saturated`` certificate for ``A``.

    ``K`` defaults to the measured ``K_inhom``; a smaller ``K`` raises
    :class:`HypothesisViolated`.
    """
    if not A:
        raise EmptySet("inhomogeneous_structure needs a non-empty set")
    rep = growth_report(A)
    K = rep.K_inhom if K is None else as_fraction(K)
    _check_growth(K, rep.K_inhom, "K_inhom")
    thr = default_zd_threshold(K) if zd_threshold is None else as_fraction(zd_threshold)
    rich = zero_divisor_branch(A, thr)
    if rich is not None:
        return rich

    N, n = A.ring.size, len(A)
    tau = cfg.tau(K, n)
    if tau >= N:
        return Saturated(tau)
    engine = SrEngine(A)

    def valid(S):
        return A <= S and is_subring(S)

    if not tighten:
        S = engine.members(UNIT, tau)
        return Subring(S, Fraction(len(S), n), tau, tau, bool(valid(S)))
    t, S, pinned_ok = _scan(engine, tau, valid)
    if S is None:
        return Saturated(N)
    return Subring(S, Fraction(len(S), n), t, tau, pinned_ok)


def _dilate(ring, r: int, S: RSet, side: str) -> RSet:
    vals = ring._mul(r, S.indices) if side == "left" else ring._mul(S.indices, r)
    return RSet.from_indices(ring, np.asarray(vals))


def homogeneous_structure_invertible(
    A: RSet, K=None, a: int | None = None, cfg: SrConfig = SrConfig(), zd_threshold=None, tighten: bool = True
):
    """``DilatedSubring`` certificate ``A ⊆ a·S`` for an invertible ``a`` in ``A``.

    ``a`` defaults to the smallest invertible element of ``A``. The subring
    is read off ``S_UNIT``; ``normalizes`` records whether ``a·S·a⁻¹ ⊆ S``.
    """
    if not A:
        raise EmptySet("homogeneous_structure_invertible needs a non-empty set")
    ring = A.ring
    if ring.one is None:
        raise NoIdentity(f"{ring.descriptor} has no multiplicative identity")
    if a is None:
        a = next((int(x) for x in A if inverse(ring, int(x)) is not None), None)
        if a is None:
            raise NotInvertible("A contains no invertible element")
    a = int(a)
    if a not in A:
        raise ValueError(f"a = {a} is not an element of A")
    a_inv = inverse(ring, a)
    if a_inv is None:
        raise NotInvertible(f"{ring.format_element(a)} has no two-sided inverse")
    rep = growth_report(A)
    K = rep.K_hom if K is None else as_fraction(K)
    _check_growth(K, rep.K_hom, "K_hom")
    thr = default_zd_threshold(K) if zd_threshold is None else as_fraction(zd_threshold)
    rich = zero_divisor_branch(A, thr)
    if rich is not None:
        return rich

    N, n = ring.size, len(A)
    tau = cfg.tau(K, n)
    if tau >= N:
        return Saturated(tau)
    engine = SrEngine(A)
    scaled = _dilate(ring, a_inv, A, "left")  # a⁻¹·A

    def valid(S):
        return scaled <= S and is_subring(S)

    if tighten:
        t, S, pinned_ok = _scan(engine, tau, valid)
        if S is None:
            return Saturated(N)
    else:
        t, S = tau, engine.members(UNIT, tau)
        pinned_ok = bool(valid(S))
    normal = _dilate(ring, a_inv, _dilate(ring, a, S, "left"), "right") <= S
    return DilatedSubring(S, a, bool(normal), Fraction(len(S), n), t, tau, pinned_ok)


def validate_certificate(A: RSet, cert) -> bool:
    """Re-derive the invariants of ``cert`` for ``A`` from scratch."""
    ring = A.ring
    n = len(A)
    if isinstance(cert, ZeroDivisorRich):
        diff = difference_set(A, A)
        zd = int((diff.mask & ring.zero_divisor_mask).sum())
        return cert.count == zd and cert.ratio == Fraction(zd, n)
    if isinstance(cert, Saturated):
        return cert.tau >= ring.size
    if isinstance(cert, Subring):
        S = cert.S
        if subring_closure(S) != S or not A <= S:
            return False
        if len(sumset(A, product_set(A, A))) > len(S):
            return False
        return cert.ratio == Fraction(len(S), n)
    if isinstance(cert, DilatedSubring):
        S = cert.S
        if subring_closure(S) != S:
            return False
        aS = _dilate(ring, cert.a, S, "left")
        if cert.cover is not None:
            if not A <= sumset(aS, cert.cover.X):
                return False
        elif not A <= aS:
            return False
        if cert.normalizes != (aS == _dilate(ring, cert.a, S, "right")):
            return False
        return cert.ratio == Fraction(len(S), n)
    return False
