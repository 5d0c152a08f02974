"""Graded groups ``G_n = <A^n>`` and the finite model ring they stabilise to.

Fix ``a`` in ``(A - A) ∩ R^*``. Once ``x -> a·x`` maps ``G_n0`` onto
``G_n0+1`` the groups have stopped growing, and every degree-0 maximal
dilation ``T`` is pinned down by the single value ``T(a^n0)`` in ``G_n0``.
So the model ring ``R0`` lives on the carrier ``G_n0`` itself:

* ``x + y`` is ring addition,
* ``x ∗ y = R⁻¹(x · L⁻¹(y · e))`` with ``e = a^n0``, ``L(w) = e·w`` and
  ``R(w) = w·e`` (both bijections ``G_n0 -> G_2n0``),
* ``φ(x)`` is the ``w`` with ``w·a = a·x``,
* ``ι_n(g)`` is the ``z`` with ``z·a^n = g·e``.

The graded law checked below is ``ι_{n+m}(gh) = ι_n(g) ∗ φ^n(ι_m(h))``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .certificates import as_fraction, default_zd_threshold, zero_divisor_branch
from .errors import BijectivityFailure, EmptySet, HypothesisViolated, NoStabilization, NotNonZeroDivisor, SolveFailure
from .rings import TableRing, check_ring_axioms
from .sets import RSet
from .setops import difference_set, growth_report, product_set
from .structure import additive_closure

DEFAULT_N_MAX = 6
_INFORMATIONAL = ("r0_commutative",)


class GradedGroups:
    """Lazily extended sequence ``G_1, G_2, ...`` with ``G_n = <G_{n-1}·A>``."""

    def __init__(self, A: RSet, a: int, n0: int, N: int, groups: list[RSet]):
        self.A = A
        self.a = a
        self.n0 = n0
        self.N = N
        self._groups = groups  # _groups[n-1] = G_n

    def __getitem__(self, n: int) -> RSet:
        if n < 1:
            raise IndexError("graded groups start at n = 1")
        while len(self._groups) < n:
            self._groups.append(additive_closure(product_set(self._groups[-1], self.A)))
        return self._groups[n - 1]

    @property
    def sizes(self) -> list[int]:
        return [len(G) for G in self._groups]

    def to_dict(self):
        return {"a": self.a, "n0": self.n0, "N": self.N, "sizes": self.sizes}


def choose_a(A: RSet) -> int:
    """Smallest element of ``(A - A) ∩ R^*``."""
    cand = difference_set(A, A).mask & ~A.ring.zero_divisor_mask
    if not cand.any():
        raise NotNonZeroDivisor("A - A contains no non-zero-divisor")
    return int(np.flatnonzero(cand)[0])


def _maps_onto(ring, a: int, G: RSet, H: RSet, side: str) -> bool:
    img = ring._mul(a, G.indices) if side == "left" else ring._mul(G.indices, a)
    return RSet.from_indices(ring, np.asarray(img)) == H


def compute_graded_groups(A: RSet, n_max: int = DEFAULT_N_MAX, a: int | None = None) -> GradedGroups:
    """Compute ``G_1..G_{n_max+1}`` and locate the stabilisation index ``n0``.

    ``N`` is ``|G_{n_max+1}|``; ``n0`` is the least ``n <= n_max`` with
    ``|G_n| = N`` and ``a·G_n = G_{n+1}``.
    """
    if not A:
        raise EmptySet("graded groups need a non-empty set")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    ring = A.ring
    a = choose_a(A) if a is None else int(a)
    if ring.zero_divisor_mask[a]:
        raise NotNonZeroDivisor(f"{ring.format_element(a)} is a zero divisor")
    groups = [additive_closure(A)]
    for _ in range(n_max):
        groups.append(additive_closure(product_set(groups[-1], A)))
    N = len(groups[-1])
    for n in range(1, n_max + 1):
        if len(groups[n - 1]) == N and _maps_onto(ring, a, groups[n - 1], groups[n], "left"):
            return GradedGroups(A, a, n, N, groups)
    raise NoStabilization(f"graded groups did not stabilise by n = {n_max}: sizes {[len(G) for G in groups]}")


def _lookup(ring_size: int, keys: np.ndarray) -> np.ndarray:
    """Inverse table of an injective map given by ``keys[i] = f(i)``."""
    inv = np.full(ring_size, -1, dtype=np.int64)
    inv[keys] = np.arange(keys.size)
    return inv


def _digest(table: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(table, dtype=np.int64).tobytes()).hexdigest()


@dataclass
class FreimanModel:
    a: int
    n0: int
    carrier: np.ndarray  # ring indices of G_n0, ascending
    identity: int  # local index of a^n0
    add_table: np.ndarray
    mul_table: np.ndarray
    phi: np.ndarray  # local permutation
    iota: dict  # n -> (domain ring indices, local images)
    n_max: int
    card_A: int
    verification: dict = field(default_factory=dict)
    variant = "FreimanModel"

    @property
    def size(self) -> int:
        return int(self.carrier.size)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.size, self.card_A)

    @property
    def phi_is_identity(self) -> bool:
        return bool(np.array_equal(self.phi, np.arange(self.size)))

    @property
    def ok(self) -> bool:
        return all(v for k, v in self.verification.items() if isinstance(v, bool) and k not in _INFORMATIONAL)

    def ring(self) -> TableRing:
        return TableRing(self.add_table, self.mul_table)

    def iota_map(self, n: int) -> dict[int, int]:
        dom, img = self.iota[n]
        return {int(g): int(z) for g, z in zip(dom, img)}

    def to_dict(self):
        return {
            "variant": self.variant,
            "a": self.a,
            "n0": self.n0,
            "size": self.size,
            "ratio": str(self.ratio),
            "carrier": self.carrier.tolist(),
            "identity": self.identity,
            "add_table_sha256": _digest(self.add_table),
            "mul_table_sha256": _digest(self.mul_table),
            "phi": self.phi.tolist(),
            "phi_is_identity": self.phi_is_identity,
            "iota": {
                str(n): {"domain": dom.tolist(), "image": img.tolist()} for n, (dom, img) in sorted(self.iota.items())
            },
            "verification": self.verification,
        }


def build_freiman_model(A: RSet, gg: GradedGroups | None = None, a: int | None = None, n_max: int = DEFAULT_N_MAX) -> FreimanModel:
    """Materialise ``(R0, φ, ι_1..ι_n_max)`` and verify it exhaustively."""
    ring = A.ring
    if gg is None:
        gg = compute_graded_groups(A, n_max, a)
    elif a is not None and int(a) != gg.a:
        raise ValueError("a disagrees with the graded groups")
    a, n0 = gg.a, gg.n0
    if ring.zero_divisor_mask[a]:
        raise NotNonZeroDivisor(f"{ring.format_element(a)} is a zero divisor")
    C = gg[n0].indices
    N = C.size
    local = _lookup(ring.size, C)
    e = ring.power(a, n0)
    if local[e] < 0:
        raise SolveFailure("a^n0 is not in G_n0")

    G2 = gg[2 * n0]
    left = np.asarray(ring._mul(e, C))
    right = np.asarray(ring._mul(C, e))
    for img, side in ((left, "left"), (right, "right")):
        if np.unique(img).size != N or RSet.from_indices(ring, img) != G2:
            raise BijectivityFailure(f"{side} multiplication by a^n0 is not a bijection G_n0 -> G_2n0")
    L_inv = _lookup(ring.size, left)
    R_inv = _lookup(ring.size, right)

    add = local[np.asarray(ring._add(C[:, None], C[None, :]))]
    w = L_inv[np.asarray(ring._mul(C, e))]  # w_y with e·w_y = y·e
    mul = R_inv[np.asarray(ring._mul(C[:, None], C[w][None, :]))]
    if (add < 0).any() or (w < 0).any() or (mul < 0).any():
        raise SolveFailure("transported arithmetic left the carrier")

    right_a = _lookup(ring.size, np.asarray(ring._mul(C, a)))
    phi = right_a[np.asarray(ring._mul(a, C))]
    if (phi < 0).any():
        raise SolveFailure("φ: a·x has no preimage under right multiplication by a")

    iota = {}
    for n in range(1, n_max + 1):
        dom = gg[n].indices
        shift = _lookup(ring.size, np.asarray(ring._mul(C, ring.power(a, n))))
        img = shift[np.asarray(ring._mul(dom, e))]
        if (img < 0).any():
            raise SolveFailure(f"ι_{n} is not defined on all of G_{n}")
        iota[n] = (dom, img)

    model = FreimanModel(a, n0, C, int(local[e]), add, mul, phi, iota, n_max, len(A))
    model.verification = verify_model(model, gg)
    return model


def verify_model(model: FreimanModel, gg: GradedGroups) -> dict:
    """Exhaustive checks of the model invariants; returns a JSON-ready summary."""
    ring = gg.A.ring
    N = model.size
    add, mul, phi = model.add_table, model.mul_table, model.phi
    axioms = check_ring_axioms(model.ring())
    idx = np.arange(N)
    e = model.identity
    identity_ok = bool(np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx))
    phi_bij = np.unique(phi).size == N
    phi_add = np.array_equal(phi[add], add[phi[:, None], phi[None, :]])
    phi_mul = np.array_equal(phi[mul], mul[phi[:, None], phi[None, :]])

    iota_add = iota_inj = True
    maps = {}
    for n, (dom, img) in model.iota.items():
        full = np.full(ring.size, -1, dtype=np.int64)
        full[dom] = img
        maps[n] = full
        iota_inj &= np.unique(img).size == dom.size
        s = np.asarray(ring._add(dom[:, None], dom[None, :]))
        iota_add &= bool(np.array_equal(full[s], add[img[:, None], img[None, :]]))

    phi_pow = {0: idx}
    for n in range(1, model.n_max + 1):
        phi_pow[n] = phi[phi_pow[n - 1]]
    graded = inclusion = True
    failures = []
    for n in range(1, model.n_max):
        for m in range(1, model.n_max - n + 1):
            Gn, Gm = gg[n].indices, gg[m].indices
            prod = np.asarray(ring._mul(Gn[:, None], Gm[None, :]))
            inclusion &= bool(gg[n + m].mask[prod].all())
            lhs = maps[n + m][prod]
            rhs = mul[maps[n][Gn][:, None], phi_pow[n][maps[m][Gm]][None, :]]
            if not np.array_equal(lhs, rhs):
                graded = False
                i, j = np.argwhere(lhs != rhs)[0]
                failures.append({"n": n, "m": m, "g": int(Gn[i]), "h": int(Gm[j])})
    return {
        "r0_axioms": axioms.ok,
        "r0_commutative": axioms.commutative,
        "identity": identity_ok,
        "phi_bijective": bool(phi_bij),
        "phi_additive": bool(phi_add),
        "phi_multiplicative": bool(phi_mul),
        "iota_additive": bool(iota_add),
        "iota_injective": bool(iota_inj),
        "graded_inclusion": bool(inclusion),
        "graded_law": bool(graded),
        "graded_law_failures": failures[:10],
        "degrees_checked": model.n_max,
    }


def homogeneous_structure_general(A: RSet, K=None, n_max: int = DEFAULT_N_MAX, zd_threshold=None, a: int | None = None):
    """Zero-divisor-rich certificate or a verified :class:`FreimanModel`."""
    if not A:
        raise EmptySet("homogeneous_structure_general needs a non-empty set")
    rep = growth_report(A)
    K = rep.K_hom if K is None else as_fraction(K)
    if rep.K_hom > K:
        raise HypothesisViolated(f"K_hom = {rep.K_hom} exceeds K = {K}")
    thr = default_zd_threshold(K) if zd_threshold is None else as_fraction(zd_threshold)
    rich = zero_divisor_branch(A, thr)
    if rich is not None:
        return rich
    model = build_freiman_model(A, a=a, n_max=n_max)
    assert len(A) <= model.size, "|A| exceeds |R0|"
    return model
