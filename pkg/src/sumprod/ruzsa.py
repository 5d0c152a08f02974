"""Ruzsa covering, triangle inequality and Plünnecke-Ruzsa budget checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptySet, PowerTooLarge
from .sets import RSet
from .setops import difference_set, iterated, sumset

MAX_PLUNNECKE_POWER = 8


@dataclass(frozen=True)
class CoverWitness:
    X: RSet
    bound: Fraction  # |A+B|/|B| (plus) or |A-B|/|B| (minus)
    covered: bool
    mode: str = "plus"

    def to_dict(self):
        return {"X": self.X.tolist(), "bound": str(self.bound), "covered": self.covered, "mode": self.mode}


def _nonempty(*sets):
    for S in sets:
        if not S:
            raise EmptySet("Ruzsa calculus needs non-empty sets")


def ruzsa_cover(A: RSet, B: RSet, mode: str = "plus") -> CoverWitness:
    """Greedy maximal ``X ⊆ A`` with pairwise disjoint translates.

    Scans ``A`` in ascending index order and keeps ``x`` whenever ``x + B``
    (or ``x - B`` in minus mode) misses every translate kept so far. Then
    ``A ⊆ B - B + X`` and ``|B||X| <= |A ± B|``.
    """
    _nonempty(A, B)
    if mode not in ("plus", "minus"):
        raise ValueError("mode must be plus or minus")
    ring = A.ring
    shift = B if mode == "plus" else -B
    b = shift.indices
    used = np.zeros(ring.size, dtype=bool)
    chosen = []
    for x in A.indices:
        tr = np.asarray(ring._add(x, b))
        if not used[tr].any():
            used[tr] = True
            chosen.append(int(x))
    X = RSet.from_indices(ring, chosen)
    grown = sumset(A, B) if mode == "plus" else difference_set(A, B)
    bound = Fraction(len(grown), len(B))
    covered = A <= sumset(difference_set(B, B), X)
    witness = CoverWitness(X, bound, covered, mode)
    assert covered and len(X) <= bound, "covering lemma violated; arithmetic bug"
    return witness


def validate_cover(A: RSet, B: RSet, w: CoverWitness) -> bool:
    """Independent re-check of a cover witness, by brute force over pairs."""
    ring = A.ring
    xs = w.X.tolist()
    if not set(xs) <= set(A.tolist()) or not xs:
        return False
    bs = B.tolist() if w.mode == "plus" else [ring.neg(b) for b in B.tolist()]
    seen = set()
    for x in xs:
        tr = {ring.add(x, b) for b in bs}
        if tr & seen:
            return False
        seen |= tr
    bb = {ring.sub(b1, b2) for b1 in B.tolist() for b2 in B.tolist()}
    reach = {ring.add(d, x) for d in bb for x in xs}
    if not set(A.tolist()) <= reach:
        return False
    if w.mode == "plus":
        grown = {ring.add(a, b) for a in A.tolist() for b in B.tolist()}
    else:
        grown = {ring.sub(a, b) for a in A.tolist() for b in B.tolist()}
    return len(B) * len(xs) <= len(grown) and w.bound == Fraction(len(grown), len(B)) and w.covered


@dataclass(frozen=True)
class TriangleCheck:
    lhs: int  # |A - C| |B|
    rhs: int  # |A - B| |B - C|
    holds: bool

    def to_dict(self):
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def triangle_check(A: RSet, B: RSet, C: RSet) -> TriangleCheck:
    """``|A - C| |B| <= |A - B| |B - C|``; ``holds`` is always true."""
    _nonempty(A, B, C)
    lhs = len(difference_set(A, C)) * len(B)
    rhs = len(difference_set(A, B)) * len(difference_set(B, C))
    return TriangleCheck(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class PlunneckeCheck:
    measured: int
    K: Fraction
    exponent: int
    budget: Fraction
    holds: bool

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.measured) / self.budget

    def to_dict(self):
        return {
            "measured": self.measured,
            "K": str(self.K),
            "exponent": self.exponent,
            "budget": str(self.budget),
            "budget_float": float(self.budget),
            "ratio": str(self.ratio),
            "holds": self.holds,
        }


def mixed_sumset(A: RSet, B: RSet, n1: int, n2: int, n3: int, n4: int) -> RSet:
    """``n1 A - n2 A + n3 B - n4 B``."""
    out = sumset(iterated(A, n1), -iterated(A, n2))
    out = sumset(out, iterated(B, n3))
    return sumset(out, -iterated(B, n4))


def plunnecke_check(A: RSet, B: RSet, n1: int, n2: int, n3: int = 0, n4: int = 0) -> PlunneckeCheck:
    """Compare ``|n1A - n2A + n3B - n4B|`` to ``K^(n1+n2+n3+n4) |A|``.

    ``K = max(|A+B|/|A|, |A|/|B|)``, the smallest constant for which the
    Plünnecke-Ruzsa hypotheses hold; the exponent is the classical one.
    """
    _nonempty(A, B)
    ns = (n1, n2, n3, n4)
    if min(ns) < 0:
        raise ValueError("iteration counts must be >= 0")
    total = sum(ns)
    if total > MAX_PLUNNECKE_POWER:
        raise PowerTooLarge(f"n1+n2+n3+n4 = {total} exceeds {MAX_PLUNNECKE_POWER}")
    K = max(Fraction(len(sumset(A, B)), len(A)), Fraction(len(A), len(B)))
    measured = len(mixed_sumset(A, B, *ns))
    budget = K**total * len(A)
    return PlunneckeCheck(measured, K, total, budget, measured <= budget)
