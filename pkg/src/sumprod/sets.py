"""Dense-bitset subsets of a finite ring."""

from __future__ import annotations

import numpy as np

from .errors import RingMismatch


class RSet:
    """Immutable subset of ``ring`` stored as a boolean mask of length N.

    Arithmetic operators are the set-arithmetic ones: ``A + B`` is the
    sumset, ``A - B`` the difference set and ``A * B`` the product set.
    ``|`` and ``&`` are union and intersection, ``<=`` is inclusion and
    :meth:`without` is set-theoretic difference.
    """

    __slots__ = ("ring", "mask", "_idx")

    def __init__(self, ring, mask):
        mask = np.array(mask, dtype=bool, copy=True)
        if mask.shape != (ring.size,):
            raise ValueError(f"mask must have length {ring.size}")
        mask.setflags(write=False)
        self.ring = ring
        self.mask = mask
        self._idx = None

    @classmethod
    def from_indices(cls, ring, indices) -> "RSet":
        idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
        mask = np.zeros(ring.size, dtype=bool)
        if idx.size:
            ring._check(idx)
            mask[idx] = True
        return cls(ring, mask)

    @classmethod
    def empty(cls, ring) -> "RSet":
        return cls(ring, np.zeros(ring.size, dtype=bool))

    @classmethod
    def full(cls, ring) -> "RSet":
        return cls(ring, np.ones(ring.size, dtype=bool))

    @classmethod
    def zero(cls, ring) -> "RSet":
        return cls.from_indices(ring, [0])

    @property
    def indices(self) -> np.ndarray:
        if self._idx is None:
            idx = np.flatnonzero(self.mask).astype(np.int64)
            idx.setflags(write=False)
            self._idx = idx
        return self._idx

    def __len__(self):
        return int(self.indices.size)

    def __iter__(self):
        return (int(i) for i in self.indices)

    def __contains__(self, x):
        x = int(x)
        return 0 <= x < self.ring.size and bool(self.mask[x])

    def __bool__(self):
        return bool(self.indices.size)

    def _same(self, other):
        if not isinstance(other, RSet):
            return NotImplemented
        if other.ring is not self.ring:
            raise RingMismatch("sets live in different rings")
        return True

    def __eq__(self, other):
        if not isinstance(other, RSet):
            return NotImplemented
        return other.ring is self.ring and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((id(self.ring), self.mask.tobytes()))

    def __le__(self, other):
        self._same(other)
        return not bool((self.mask & ~other.mask).any())

    def __ge__(self, other):
        return other <= self

    def __or__(self, other):
        self._same(other)
        return RSet(self.ring, self.mask | other.mask)

    def __and__(self, other):
        self._same(other)
        return RSet(self.ring, self.mask & other.mask)

    def without(self, other) -> "RSet":
        self._same(other)
        return RSet(self.ring, self.mask & ~other.mask)

    def complement(self) -> "RSet":
        return RSet(self.ring, ~self.mask)

    def isdisjoint(self, other) -> bool:
        self._same(other)
        return not bool((self.mask & other.mask).any())

    def __add__(self, other):
        from .setops import sumset

        return sumset(self, other)

    def __sub__(self, other):
        from .setops import difference_set

        return difference_set(self, other)

    def __mul__(self, other):
        from .setops import product_set

        return product_set(self, other)

    def __neg__(self):
        idx = self.indices
        return RSet.from_indices(self.ring, self.ring._neg(idx) if idx.size else idx)

    @property
    def min(self) -> int:
        return int(self.indices[0])

    def tolist(self) -> list[int]:
        return [int(i) for i in self.indices]

    def __repr__(self):
        items = ",".join(self.ring.format_element(i) for i in self.indices[:16])
        more = ",..." if len(self) > 16 else ""
        return f"RSet({self.ring.descriptor}, {{{items}{more}}})"
