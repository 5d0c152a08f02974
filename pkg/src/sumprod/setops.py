"""Exact set arithmetic over ring subsets.

Binary kernels iterate over members of one operand in chunks and scatter
the results into a dense mask; with a memoised ring the inner step is a row
lookup in the Cayley table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptySet, RingMismatch, ZeroProductPower
from .sets import RSet

_CHUNK = 1 << 21


def _check_pair(A: RSet, B: RSet):
    if A.ring is not B.ring:
        raise RingMismatch("sets live in different rings")


def _combine(A: RSet, B: RSet, op) -> RSet:
    _check_pair(A, B)
    ring = A.ring
    out = np.zeros(ring.size, dtype=bool)
    a, b = A.indices, B.indices
    if not a.size or not b.size:
        return RSet(ring, out)
    if a.size <= b.size:
        rows = max(1, _CHUNK // b.size)
        for s in range(0, a.size, rows):
            out[np.asarray(op(a[s : s + rows, None], b[None, :])).ravel()] = True
    else:
        rows = max(1, _CHUNK // a.size)
        for s in range(0, b.size, rows):
            out[np.asarray(op(a[None, :], b[s : s + rows, None])).ravel()] = True
    return RSet(ring, out)


def sumset(A: RSet, B: RSet) -> RSet:
    """``{a + b}``."""
    return _combine(A, B, A.ring._add)


def difference_set(A: RSet, B: RSet) -> RSet:
    """``{a - b}``."""
    return _combine(A, B, A.ring._sub)


def product_set(A: RSet, B: RSet) -> RSet:
    """``{a * b}`` (order matters in non-commutative rings)."""
    return _combine(A, B, A.ring._mul)


def iterated(A: RSet, n: int, op: str = "sum") -> RSet:
    """``nA`` for ``op='sum'`` (with ``0A = {0}``) or ``A^n`` for ``op='product'``."""
    if op == "sum":
        if n < 0:
            raise ValueError("n must be >= 0")
        out = RSet.zero(A.ring)
        for _ in range(n):
            out = sumset(out, A)
        return out
    if op == "product":
        if n < 1:
            raise ZeroProductPower("A^n needs n >= 1")
        out = A
        for _ in range(n - 1):
            out = product_set(out, A)
        return out
    raise ValueError(f"unknown op {op!r}")


def dilate(r: int, A: RSet, side: str = "left") -> RSet:
    """``r·A`` (left) or ``A·r`` (right)."""
    single = RSet.from_indices(A.ring, [r])
    if side == "left":
        return product_set(single, A)
    if side == "right":
        return product_set(A, single)
    raise ValueError(f"side must be left or right, not {side!r}")


def _pair_values(A: RSet, B: RSet, op: str) -> np.ndarray:
    _check_pair(A, B)
    ring = A.ring
    f = {"sum": ring._add, "product": ring._mul, "difference": ring._sub}[op]
    a, b = A.indices, B.indices
    if not a.size or not b.size:
        return np.zeros(0, dtype=np.int64)
    return np.asarray(f(a[:, None], b[None, :])).ravel()


def representation_count(A: RSet, B: RSet, x: int, op: str = "sum") -> int:
    """Number of pairs ``(a, b)`` in ``A x B`` with ``a op b == x``."""
    return int(np.count_nonzero(_pair_values(A, B, op) == int(x)))


def representation_counts(A: RSet, B: RSet, op: str = "sum") -> np.ndarray:
    """Length-N histogram of ``a op b`` over ``A x B``."""
    vals = _pair_values(A, B, op)
    return np.bincount(vals, minlength=A.ring.size)


def additive_energy(A: RSet, B: RSet) -> int:
    """``sum_x r_{A+B}(x)^2``."""
    r = representation_counts(A, B, "sum").astype(object)
    return int(sum(v * v for v in r if v))


def zero_divisors_in(S: RSet) -> RSet:
    """``S \\ R^*``."""
    return RSet(S.ring, S.mask & S.ring.zero_divisor_mask)


@dataclass(frozen=True)
class GrowthReport:
    card_A: int
    sumset: int  # |A+A|
    difference: int  # |A-A|
    product: int  # |A.A|
    homogeneous: int  # |A.A - A.A|
    inhomogeneous: int  # |A + A.A|
    zero_divisor_count_in_diff: int
    K_inhom: Fraction
    K_hom: Fraction

    @property
    def ratios(self) -> dict[str, Fraction]:
        n = self.card_A
        return {
            "sumset": Fraction(self.sumset, n),
            "difference": Fraction(self.difference, n),
            "product": Fraction(self.product, n),
            "homogeneous": Fraction(self.homogeneous, n),
            "inhomogeneous": Fraction(self.inhomogeneous, n),
        }

    @property
    def K_sum_product(self) -> Fraction:
        """``max(|A+A|, |A.A|) / |A|`` floored at 1 (the Katz-Tao hypothesis)."""
        return max(Fraction(self.sumset, self.card_A), Fraction(self.product, self.card_A), Fraction(1))

    def to_dict(self):
        return {
            "card_A": self.card_A,
            "sumset": self.sumset,
            "difference": self.difference,
            "product": self.product,
            "homogeneous": self.homogeneous,
            "inhomogeneous": self.inhomogeneous,
            "ratios": {k: str(v) for k, v in self.ratios.items()},
            "zero_divisor_count_in_diff": self.zero_divisor_count_in_diff,
            "K_inhom": str(self.K_inhom),
            "K_hom": str(self.K_hom),
        }


def growth_report(A: RSet) -> GrowthReport:
    if not A:
        raise EmptySet("growth_report needs a non-empty set")
    n = len(A)
    AA = product_set(A, A)
    diff = difference_set(A, A)
    hom = difference_set(AA, AA)
    inhom = sumset(A, AA)
    one = Fraction(1)
    k_inhom = max(Fraction(len(inhom), n), Fraction(n, len(AA)), one)
    k_hom = max(Fraction(len(hom), n), Fraction(n, len(AA)), one)
    return GrowthReport(
        card_A=n,
        sumset=len(sumset(A, A)),
        difference=len(diff),
        product=len(AA),
        homogeneous=len(hom),
        inhomogeneous=len(inhom),
        zero_divisor_count_in_diff=len(zero_divisors_in(diff)),
        K_inhom=k_inhom,
        K_hom=k_hom,
    )
