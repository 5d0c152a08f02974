"""Outcome types shared by the theorem pipelines.

A pipeline ends in one of five variants: ``ZeroDivisorRich``, ``Subring``,
``DilatedSubring``, ``Saturated`` or ``FreimanModel`` (the last lives in
:mod:`sumprod.freiman`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .sets import RSet
from .setops import difference_set, zero_divisors_in

VARIANTS = ("ZeroDivisorRich", "Subring", "DilatedSubring", "Saturated", "FreimanModel")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def default_zd_threshold(K) -> Fraction:
    """Default zero-divisor threshold ``1/K``."""
    return 1 / as_fraction(K)


@dataclass(frozen=True)
class ZeroDivisorRich:
    count: int  # |(A-A) \ R^*|, zero included
    ratio: Fraction  # count / |A|
    nonzero_count: int = 0
    threshold: Fraction = Fraction(0)
    variant = "ZeroDivisorRich"

    def to_dict(self):
        return {
            "variant": self.variant,
            "count": self.count,
            "nonzero_count": self.nonzero_count,
            "ratio": str(self.ratio),
            "threshold": str(self.threshold),
        }


def zero_divisor_branch(A: RSet, zd_threshold, diff: RSet | None = None) -> ZeroDivisorRich | None:
    """Return the zero-divisor-rich outcome for ``A`` or ``None``.

    ``A`` is zero-divisor rich when ``A - A`` holds a non-zero zero divisor
    and ``|(A-A) \\ R^*| >= zd_threshold * |A|``. The difference ``0`` is a
    zero divisor in every non-zero ring, so on its own it never triggers
    the branch.
    """
    if diff is None:
        diff = difference_set(A, A)
    zd = zero_divisors_in(diff)
    count = len(zd)
    nonzero = count - (1 if 0 in zd else 0)
    thr = as_fraction(zd_threshold)
    if nonzero > 0 and count >= thr * len(A):
        return ZeroDivisorRich(count, Fraction(count, len(A)), nonzero, thr)
    return None


@dataclass(frozen=True)
class Subring:
    S: RSet
    ratio: Fraction  # |S| / |A|
    tau: int | None = None
    pinned_tau: int | None = None
    pinned_valid: bool = True
    variant = "Subring"

    def to_dict(self):
        return {
            "variant": self.variant,
            "S": self.S.tolist(),
            "size": len(self.S),
            "ratio": str(self.ratio),
            "tau": self.tau,
            "pinned_tau": self.pinned_tau,
            "pinned_valid": self.pinned_valid,
        }


@dataclass(frozen=True)
class DilatedSubring:
    S: RSet
    a: int
    normalizes: bool
    ratio: Fraction
    tau: int | None = None
    pinned_tau: int | None = None
    pinned_valid: bool = True
    cover: object | None = field(default=None, compare=False)  # CoverWitness for A ⊆ aS + X
    variant = "DilatedSubring"

    def to_dict(self):
        out = {
            "variant": self.variant,
            "S": self.S.tolist(),
            "size": len(self.S),
            "a": self.a,
            "normalizes": self.normalizes,
            "ratio": str(self.ratio),
            "tau": self.tau,
            "pinned_tau": self.pinned_tau,
            "pinned_valid": self.pinned_valid,
        }
        if self.cover is not None:
            out["cover"] = self.cover.to_dict()
        return out


@dataclass(frozen=True)
class Saturated:
    tau: int
    variant = "Saturated"

    def to_dict(self):
        return {"variant": self.variant, "tau": self.tau}
