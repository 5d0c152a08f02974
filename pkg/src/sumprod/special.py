"""Experiment recipes for particular ring families.

* finite fields: extraction, then the invertible homogeneous pipeline on
  the good subset, then a Ruzsa cover of the input by that subset;
* products of fields: either some ``A_j = (A - A) ∩ ker π_j`` is large, or
  the non-zero-divisor part of ``A`` goes through the field recipe;
* ``Z/p^k``: either ``(A - A) ∩ pR`` is large and ``A`` is covered by
  ``pR + X``, or the unit part goes through the field recipe;
* prime-field algebras: exhaustive search for all-zero-divisor linear
  subspaces (a brute-force stand-in for linearisation at tiny scale).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from .certificates import DilatedSubring, Subring, ZeroDivisorRich, as_fraction, default_zd_threshold
from .errors import (
    HypothesisViolated,
    NoStabilization,
    NotCyclicPrimePower,
    NotDivisionRing,
    NotM2,
    NotNonZeroDivisor,
    NotPrimeFieldAlgebra,
    NotProductOfFields,
    TooLarge,
)
from .extraction import GoodSubset, katz_tao_extract, sum_product_K
from .freiman import DEFAULT_N_MAX, homogeneous_structure_general
from .rings import CyclicRing, GaloisField, MatrixRing, ProductRing
from .ruzsa import ruzsa_cover
from .sets import RSet
from .setops import difference_set, sumset, zero_divisors_in
from .sr import SrConfig
from .structure import homogeneous_structure_invertible, subring_closure

AFFINE_SIZE_LIMIT = 4096
SUBSPACE_LIMIT = 200_000


@dataclass
class ExperimentResult:
    recipe: str
    branch: str | None  # "i", "ii" or None for recipes without branches
    certificate: object | None
    subject: RSet  # the set the certificate speaks about
    details: dict = field(default_factory=dict)

    @property
    def outcome(self) -> str:
        return self.certificate.variant if self.certificate is not None else "none"

    def to_dict(self):
        return {
            "recipe": self.recipe,
            "branch": self.branch,
            "outcome": self.outcome,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "subject": self.subject.tolist(),
            "details": self.details,
        }


def _is_field(ring) -> bool:
    return ring.size > 1 and ring.has_identity and ring.commutative and int(ring.zero_divisor_mask.sum()) == 1


def _measured_K(A: RSet, K):
    measured = sum_product_K(A)
    if K is None:
        return measured
    K = as_fraction(K)
    if measured > K:
        raise HypothesisViolated(f"max(|A+A|, |A·A|)/|A| = {measured} exceeds K = {K}")
    return K


def division_pipeline(A: RSet, cfg: SrConfig = SrConfig(), zd_threshold=None):
    """Certificate for a set ``A`` of non-zero-divisors.

    If ``A ∪ {0}`` is already a subring it is returned directly. Otherwise
    extract a good subset ``A'``, read off ``A' ⊆ a·S`` and cover ``A`` by
    ``A' - A' + X ⊆ a·S + X``.
    """
    ring = A.ring
    closure = subring_closure(A)
    if closure == A | RSet.zero(ring):
        n = max(len(A), 1)
        return Subring(closure, Fraction(len(closure), n))
    ext = katz_tao_extract(A, zd_threshold=zd_threshold)
    if not isinstance(ext.result, GoodSubset):
        return ext.result
    Ap = ext.result.A_prime
    cert = homogeneous_structure_invertible(Ap, a=Ap.min, cfg=cfg, zd_threshold=zd_threshold)
    if not isinstance(cert, DilatedSubring):
        return cert
    cover = ruzsa_cover(A, Ap)
    aS = RSet.from_indices(ring, np.asarray(ring._mul(cert.a, cert.S.indices)))
    assert A <= sumset(aS, cover.X), "A ⊄ a·S + X"
    return DilatedSubring(
        cert.S, cert.a, cert.normalizes, Fraction(len(cert.S), len(A)),
        cert.tau, cert.pinned_tau, cert.pinned_valid, cover,
    )


def division_ring_experiment(A: RSet, K=None, cfg: SrConfig = SrConfig(), zd_threshold=None) -> ExperimentResult:
    ring = A.ring
    if not _is_field(ring):
        raise NotDivisionRing(f"{ring.descriptor} is not a finite field")
    K = _measured_K(A, K)
    A_star = A.without(RSet.zero(ring))
    cert = division_pipeline(A_star, cfg, zd_threshold)
    return ExperimentResult("division", None, cert, A_star, {"K": str(K), "card_A": len(A)})


@dataclass(frozen=True)
class ProjectionProfile:
    image_sizes: tuple[int, ...]  # |π_j(A)|
    fiber_max: tuple[int, ...]  # largest fiber of π_j restricted to A

    def to_dict(self):
        return {"image_sizes": list(self.image_sizes), "fiber_max": list(self.fiber_max)}


def projection_profile(A: RSet) -> ProjectionProfile:
    ring = A.ring
    sizes, fibers = [], []
    for j, part in enumerate(ring.parts):
        counts = np.bincount(ring.project(j, A.indices), minlength=part.size)
        assert counts.sum() == len(A)
        sizes.append(int(np.count_nonzero(counts)))
        fibers.append(int(counts.max()))
    return ProjectionProfile(tuple(sizes), tuple(fibers))


def product_ring_experiment(A: RSet, K=None, cfg: SrConfig = SrConfig(), threshold=None) -> ExperimentResult:
    """Branch (i) when some ``A_j`` has a non-zero element and ``|A_j| >= threshold·|A|``."""
    ring = A.ring
    if not isinstance(ring, ProductRing) or not all(_is_field(p) for p in ring.parts):
        raise NotProductOfFields(f"{ring.descriptor} is not a product of fields")
    K = _measured_K(A, K)
    thr = default_zd_threshold(K) if threshold is None else as_fraction(threshold)
    n = len(A)
    diff = difference_set(A, A)
    kernels = [RSet(ring, diff.mask & (ring.project(j, ring.elements()) == 0)) for j in range(len(ring.parts))]
    sizes = [len(Aj) for Aj in kernels]
    large = [j for j, s in enumerate(sizes) if s > 1 and s >= thr * n]
    details = {"K": str(K), "threshold": str(thr), "kernel_sizes": sizes}
    if large:
        j = max(large, key=lambda i: (sizes[i], -i))
        prof = projection_profile(A)
        lhs = len(sumset(A, kernels[j]))
        rhs = prof.image_sizes[j] * sizes[j]
        assert lhs >= rhs, "|A + A_j| < |π_j(A)||A_j|"
        zd = len(zero_divisors_in(diff))
        cert = ZeroDivisorRich(zd, Fraction(zd, n), zd - 1, thr)
        details.update(factor=j, profile=prof.to_dict(), sum_with_kernel=lhs, projection_bound=rhs)
        return ExperimentResult("product", "i", cert, A, details)
    A_star = RSet(ring, A.mask & ~ring.zero_divisor_mask)
    details["stripped"] = n - len(A_star)
    cert = division_pipeline(A_star, cfg) if A_star else None
    return ExperimentResult("product", "ii", cert, A_star, details)


def cyclic_prime(ring) -> int:
    if not isinstance(ring, CyclicRing) or ring.q < 2:
        raise NotCyclicPrimePower(f"{ring.descriptor} is not Z/p^k")
    fac = sympy.factorint(ring.q)
    if len(fac) != 1:
        raise NotCyclicPrimePower(f"{ring.q} is not a prime power")
    return int(next(iter(fac)))


def cyclic_ring_experiment(A: RSet, K=None, cfg: SrConfig = SrConfig(), threshold=None) -> ExperimentResult:
    """Branch (i) covers ``A`` by ``pR + X``; branch (ii) reports ``|A|/|R|``."""
    ring = A.ring
    p = cyclic_prime(ring)
    K = _measured_K(A, K)
    thr = default_zd_threshold(K) if threshold is None else as_fraction(threshold)
    n = len(A)
    pR = RSet(ring, ring.elements() % p == 0)
    A1 = difference_set(A, A) & pR
    details = {"K": str(K), "threshold": str(thr), "p": p, "card_A1": len(A1)}
    if len(A1) > 1 and len(A1) >= thr * n:
        cover = ruzsa_cover(A, A1)
        inside = A <= sumset(pR, cover.X)
        assert inside, "A ⊄ pR + X"
        cert = ZeroDivisorRich(len(A1), Fraction(len(A1), n), len(A1) - 1, thr)
        details.update(cover=cover.to_dict(), covered_by_pR=inside, exact=bool(A <= pR))
        return ExperimentResult("cyclic", "i", cert, A, details)
    A_star = RSet(ring, A.mask & ~ring.zero_divisor_mask)
    details["density"] = str(Fraction(n, ring.size))
    details["stripped"] = n - len(A_star)
    cert = division_pipeline(A_star, cfg) if A_star else None
    return ExperimentResult("cyclic", "ii", cert, A_star, details)


# ---------------------------------------------------------------------------
# affine zero-divisor subspaces
# ---------------------------------------------------------------------------


def prime_field_coordinates(ring) -> tuple[int, int]:
    """``(p, d)`` with ``N = p^d`` when indices are base-``p`` coordinates."""
    p = ring.prime_field()
    if p is None:
        raise NotPrimeFieldAlgebra(f"{ring.descriptor} is not an algebra over a prime field")
    d = round(math.log(ring.size, p))
    assert p**d == ring.size
    return p, d


def _digits(i: int, p: int, d: int) -> list[int]:
    return [(i // p**k) % p for k in range(d)]


def _encode(v, p: int) -> int:
    return int(sum(int(c) * p**k for k, c in enumerate(v)))


def rref_basis(vectors, p: int, d: int) -> tuple[int, ...]:
    """Reduced echelon basis (as element indices) of the span of ``vectors``."""
    rows = [_digits(int(v), p, d) for v in vectors]
    basis = []
    col = 0
    while rows and col < d:
        piv = next((r for r in rows if r[col] % p), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [(c * inv) % p for c in piv]
        rows = [[(x - r[col] * y) % p for x, y in zip(r, piv)] for r in rows]
        basis = [[(x - b[col] * y) % p for x, y in zip(b, piv)] for b in basis]
        basis.append(piv)
        rows = [r for r in rows if any(r)]
        col += 1
    return tuple(_encode(b, p) for b in basis)


@dataclass(frozen=True)
class Subspace:
    V: RSet
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class AffineWitness:
    V: RSet
    basis: tuple[int, ...]
    x: int
    overlap: int | None  # |A ∩ (x + V)|
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_dict(self):
        return {
            "V": self.V.tolist(),
            "basis": list(self.basis),
            "dim": self.dim,
            "x": self.x,
            "overlap": self.overlap,
            "label": self.label,
        }


def _extend(ring, V: np.ndarray, v: int, p: int) -> np.ndarray:
    parts = [V]
    cv = 0
    for _ in range(p - 1):
        cv = int(ring._add(cv, v))
        parts.append(np.asarray(ring._add(V, cv)))
    return np.concatenate(parts)


def zero_divisor_subspaces(ring) -> list[Subspace]:
    """Every linear subspace of dimension >= 1 made of zero divisors.

    Breadth-first: each subspace of dimension ``k + 1`` arises from one of
    dimension ``k`` by adjoining a vector; duplicates are removed by mask.
    """
    p, d = prime_field_coordinates(ring)
    if ring.size > AFFINE_SIZE_LIMIT:
        raise TooLarge(f"p^d = {ring.size} exceeds {AFFINE_SIZE_LIMIT}")
    zd = ring.zero_divisor_mask
    cand = np.flatnonzero(zd)[1:]
    level = {RSet.zero(ring).mask.tobytes(): np.array([0], dtype=np.int64)}
    out: list[Subspace] = []
    while level:
        nxt = {}
        for V in level.values():
            inside = np.zeros(ring.size, dtype=bool)
            inside[V] = True
            for v in cand:
                if inside[v]:
                    continue
                W = _extend(ring, V, int(v), p)
                if not zd[W].all():
                    continue
                mask = np.zeros(ring.size, dtype=bool)
                mask[W] = True
                key = mask.tobytes()
                if key not in nxt:
                    nxt[key] = np.flatnonzero(mask)
                    if len(out) + len(nxt) > SUBSPACE_LIMIT:
                        raise TooLarge(f"more than {SUBSPACE_LIMIT} zero-divisor subspaces")
        for W in nxt.values():
            out.append(Subspace(RSet.from_indices(ring, W), rref_basis(W[1:], p, d)))
        level = nxt
    out.sort(key=lambda s: (s.dim, s.basis))
    return out


def max_zero_divisor_dim(ring) -> int:
    spaces = zero_divisor_subspaces(ring)
    return max((s.dim for s in spaces), default=0)


def affine_zero_divisor_search(A: RSet, dim_min: int = 1) -> AffineWitness | None:
    """Best ``x + V`` made entirely of zero divisors, by overlap with ``A``.

    Ties go to the larger dimension, then the lexicographically smaller
    echelon basis, then the smaller offset ``x`` (the least element of its
    coset).
    """
    ring = A.ring
    spaces = [s for s in zero_divisor_subspaces(ring) if s.dim >= dim_min]
    zd = ring.zero_divisor_mask
    elems = ring.elements()
    best, best_key = None, None
    for s in spaces:
        reps = np.asarray(ring._add(elems[:, None], s.V.indices[None, :])).min(axis=1)
        bad = np.bincount(reps, weights=~zd, minlength=ring.size)
        counts = np.bincount(reps[A.indices], minlength=ring.size) if A else np.zeros(ring.size, dtype=np.int64)
        ok = np.zeros(ring.size, dtype=bool)
        ok[np.unique(reps)] = True
        ok &= bad == 0
        xs = np.flatnonzero(ok)
        if not xs.size:
            continue
        x = int(xs[np.argmax(counts[xs])])
        key = (-int(counts[x]), -s.dim, s.basis, x)
        if best_key is None or key < best_key:
            best_key = key
            best = AffineWitness(s.V, s.basis, x, int(counts[x]))
    return best


def validate_affine_witness(w: AffineWitness) -> bool:
    ring = w.V.ring
    p, d = prime_field_coordinates(ring)
    if rref_basis(w.V.indices[1:], p, d) != w.basis or len(w.V) != p ** len(w.basis):
        return False
    coset = np.asarray(ring._add(w.x, w.V.indices))
    return bool(ring.zero_divisor_mask[coset].all())


def m2_annihilator_spaces(ring, cross_check: bool = True) -> list[AffineWitness]:
    """Left and right annihilators of each point of the projective line.

    For ``v`` in ``P^1(F_p)``: ``{M : Mv = 0}`` and ``{M : vᵀM = 0}``. With
    ``cross_check`` the exhaustive search must find exactly these as the
    maximal all-zero-divisor subspaces, all of dimension 2.
    """
    if not (isinstance(ring, MatrixRing) and ring.d == 2):
        raise NotM2(f"{ring.descriptor} is not a 2x2 matrix ring")
    base = ring.base
    if not (isinstance(base, (GaloisField, CyclicRing)) and base.prime_field() == base.size):
        raise NotM2("base ring must be a prime field")
    p = base.size
    _, d = prime_field_coordinates(ring)
    E = ring.entries(ring.elements())
    points = [(1, t) for t in range(p)] + [(0, 1)]
    out = []
    for v in points:
        col = (E[:, :, 0] * v[0] + E[:, :, 1] * v[1]) % p  # M v
        row = (v[0] * E[:, 0, :] + v[1] * E[:, 1, :]) % p  # vᵀ M
        for side, vals in (("left", col), ("right", row)):
            mask = ~vals.any(axis=1)
            V = RSet(ring, mask)
            out.append(AffineWitness(V, rref_basis(V.indices[1:], p, d), 0, None, f"{side} v=({v[0]},{v[1]})"))
    if cross_check:
        spaces = zero_divisor_subspaces(ring)
        top = max(s.dim for s in spaces)
        maximal = {s.V for s in spaces if s.dim == top}
        assert top == 2 and maximal == {w.V for w in out}, "annihilator spaces disagree with the exhaustive search"
    return out


def algebra_experiment(A: RSet, K=None, dim_min: int = 1, n_max: int = DEFAULT_N_MAX, threshold=None) -> ExperimentResult:
    """Affine zero-divisor witness (branch i) or the general homogeneous pipeline (branch ii)."""
    ring = A.ring
    prime_field_coordinates(ring)
    witness = affine_zero_divisor_search(A, dim_min)
    K_used = sum_product_K(A) if K is None else as_fraction(K)
    thr = default_zd_threshold(K_used) if threshold is None else as_fraction(threshold)
    details = {
        "K": str(K_used),
        "threshold": str(thr),
        "witness": None if witness is None else witness.to_dict(),
        "search": "exhaustive subspace enumeration",
    }
    if witness is not None and witness.overlap > 0 and witness.overlap >= thr * len(A):
        branch = "i"
    else:
        branch = "ii"
    try:
        cert = homogeneous_structure_general(A, n_max=n_max)
    except (NotNonZeroDivisor, NoStabilization) as exc:
        cert = None
        details["finding"] = f"{type(exc).__name__}: {exc}"
    return ExperimentResult("algebra", branch, cert, A, details)
