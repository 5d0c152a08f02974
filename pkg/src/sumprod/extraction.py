"""Constructive Katz-Tao step.

From ``A ⊆ R^*`` with small ``A + A`` and ``A·A``, either certify that
``A - A`` is rich in zero divisors or extract ``A' ⊆ A`` with
``|A'| >= |A|/2K`` whose homogeneous set ``A'A' - A'A'`` is measured.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certificates import ZeroDivisorRich, as_fraction, default_zd_threshold, zero_divisor_branch
from .errors import EmptySet, HypothesisViolated, NotNonZeroDivisors
from .sets import RSet
from .setops import difference_set, product_set, sumset, zero_divisors_in

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoodSubset:
    A_prime: RSet
    b0: int
    measured_ratio: Fraction  # |A'A' - A'A'| / |A'|
    variant = "GoodSubset"

    def to_dict(self):
        return {
            "variant": self.variant,
            "A_prime": self.A_prime.tolist(),
            "size": len(self.A_prime),
            "b0": self.b0,
            "measured_ratio": str(self.measured_ratio),
        }


@dataclass(frozen=True)
class PairCounts:
    """``|a·A ∩ A·b|`` for all ``a, b`` in ``A`` (rows a, columns b)."""

    elements: np.ndarray
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ExtractionOutcome:
    result: ZeroDivisorRich | GoodSubset
    K: Fraction
    zd_threshold: Fraction
    pair_count_total: int
    cauchy_schwarz_bound: Fraction  # |A|^4 / |A·A|

    @property
    def variant(self):
        return self.result.variant

    def to_dict(self):
        return {
            **self.result.to_dict(),
            "K": str(self.K),
            "zd_threshold": str(self.zd_threshold),
            "pair_count_total": self.pair_count_total,
            "cauchy_schwarz_bound": str(self.cauchy_schwarz_bound),
        }


def pair_counts(A: RSet) -> PairCounts:
    ring = A.ring
    a = A.indices
    left = np.zeros((a.size, ring.size), dtype=np.int64)
    right = np.zeros((a.size, ring.size), dtype=np.int64)
    rows = np.arange(a.size)[:, None]
    left[rows, np.asarray(ring._mul(a[:, None], a[None, :]))] = 1  # a·A
    right[rows, np.asarray(ring._mul(a[None, :], a[:, None]))] = 1  # A·b
    return PairCounts(a, left @ right.T)


def sum_product_K(A: RSet) -> Fraction:
    n = len(A)
    return max(Fraction(len(sumset(A, A)), n), Fraction(len(product_set(A, A)), n), Fraction(1))


def katz_tao_extract(A: RSet, K=None, zd_threshold=None) -> ExtractionOutcome:
    """Run the Katz-Tao extraction on ``A``.

    ``K`` defaults to the smallest admissible value
    ``max(|A+A|, |A·A|)/|A|``; ``zd_threshold`` defaults to ``1/K``.
    Among all ``b`` the one maximising ``|{a : |aA ∩ Ab| >= |A|/2K}|`` is
    taken as ``b0`` (smallest index on ties).
    """
    if not A:
        raise EmptySet("katz_tao_extract needs a non-empty set")
    ring = A.ring
    if (A.mask & ring.zero_divisor_mask).any():
        raise NotNonZeroDivisors("A must consist of non-zero-divisors")
    n = len(A)
    AA = product_set(A, A)
    K = sum_product_K(A) if K is None else as_fraction(K)
    if len(sumset(A, A)) > K * n or len(AA) > K * n:
        raise HypothesisViolated(f"|A+A| or |A·A| exceeds K|A| for K={K}")
    thr = default_zd_threshold(K) if zd_threshold is None else as_fraction(zd_threshold)

    pc = pair_counts(A)
    cs_bound = Fraction(n**4, len(AA))
    diff = difference_set(A, A)
    log.debug(
        "katz-tao: |A|=%d K=%s zd=%d threshold=%s",
        n, K, len(zero_divisors_in(diff)), thr,
    )
    rich = zero_divisor_branch(A, thr, diff)
    if rich is not None:
        return ExtractionOutcome(rich, K, thr, pc.total, cs_bound)

    good = 2 * K * pc.counts >= n  # |aA ∩ Ab| >= |A|/2K
    per_b = good.sum(axis=0)
    j = int(np.argmax(per_b))  # first maximum -> smallest index
    b0 = int(pc.elements[j])
    A_prime = RSet.from_indices(ring, pc.elements[good[:, j]])
    assert len(A_prime) * 2 * K >= n, "pigeonhole bound |A'| >= |A|/2K failed"
    hom = difference_set(product_set(A_prime, A_prime), product_set(A_prime, A_prime))
    res = GoodSubset(A_prime, b0, Fraction(len(hom), len(A_prime)))
    return ExtractionOutcome(res, K, thr, pc.total, cs_bound)


def validate_extraction(A: RSet, K, out: ExtractionOutcome) -> bool:
    """Re-derive every invariant of ``out`` from scratch."""
    K = as_fraction(K)
    res = out.result
    n = len(A)
    ring = A.ring
    diff = {ring.sub(x, y) for x in A for y in A}
    zd = [d for d in diff if ring.zero_divisor_mask[d]]
    if isinstance(res, ZeroDivisorRich):
        return res.count == len(zd) and res.ratio == Fraction(len(zd), n)
    if not isinstance(res, GoodSubset):
        return False
    Ap = res.A_prime.tolist()
    if not set(Ap) <= set(A.tolist()) or res.b0 not in A:
        return False
    if 2 * K * len(Ap) < n:
        return False
    prods = {ring.mul(x, y) for x in Ap for y in Ap}
    hom = {ring.sub(x, y) for x in prods for y in prods}
    return res.measured_ratio == Fraction(len(hom), len(Ap))
