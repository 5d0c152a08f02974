"""Shared test helpers and brute-force oracles.

The oracles use plain Python sets and the checked public ring methods, or
arithmetic written out independently (polynomials, 2x2 matrices), so they
share no kernels with the library.
"""

from functools import lru_cache
from itertools import combinations, product

from hypothesis import strategies as st

from sumprod import RSet, ring_from_name


@lru_cache(maxsize=None)
def ring(name):
    return ring_from_name(name)


def S(name_or_ring, indices):
    r = ring(name_or_ring) if isinstance(name_or_ring, str) else name_or_ring
    return RSet.from_indices(r, indices)


SMALL_RINGS = ["z6", "z7", "z9", "z12", "gf4", "gf9", "f3xf3", "f2xf2", "m2f2", "z2xz4"]


def subsets(name, min_size=1, max_size=None):
    """Hypothesis strategy for RSets of a catalog ring."""
    r = ring(name)
    max_size = r.size if max_size is None else max_size
    return st.sets(st.integers(0, r.size - 1), min_size=min_size, max_size=max_size).map(
        lambda xs: RSet.from_indices(r, sorted(xs))
    )


def ring_and_sets(k=1, names=SMALL_RINGS, max_size=None):
    """Strategy for (ring name, k non-empty subsets)."""
    return st.sampled_from(names).flatmap(
        lambda n: st.tuples(st.just(n), *[subsets(n, 1, max_size) for _ in range(k)])
    )


# ---------------------------------------------------------------------------
# set oracles
# ---------------------------------------------------------------------------


def b_sum(r, A, B):
    return {r.add(a, b) for a in A for b in B}


def b_diff(r, A, B):
    return {r.sub(a, b) for a in A for b in B}


def b_prod(r, A, B):
    return {r.mul(a, b) for a in A for b in B}


def b_is_zero_divisor(r, x):
    return any(r.mul(x, a) == 0 or r.mul(a, x) == 0 for a in range(1, r.size))


def b_sr(r, A, rr, tau):
    """``{x : |x·A + r·A| <= tau}``; ``rr=None`` is the formal unit."""
    rA = set(A) if rr is None else {r.mul(rr, a) for a in A}
    return {x for x in range(r.size) if len({r.add(r.mul(x, a), b) for a in A for b in rA}) <= tau}


def b_subring_closure(r, G):
    S_ = set(G) | {0}
    while True:
        new = S_ | {r.add(x, y) for x in S_ for y in S_} | {r.neg(x) for x in S_} | {r.mul(x, y) for x in S_ for y in S_}
        if new == S_:
            return S_
        S_ = new


def b_additive_group(r, G):
    S_ = set(G) | {0}
    while True:
        new = S_ | {r.add(x, y) for x in S_ for y in S_}
        if new == S_:
            return S_
        S_ = new


# ---------------------------------------------------------------------------
# arithmetic oracles
# ---------------------------------------------------------------------------


def poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists (ascending) modulo a monic ``modulus``."""
    k = len(modulus) - 1
    out = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    for deg in range(len(out) - 1, k - 1, -1):
        c = out[deg]
        if c:
            for i in range(k + 1):
                out[deg - k + i] = (out[deg - k + i] - c * modulus[i]) % p
    return out[:k]


def digits(i, p, k):
    return [(i // p**j) % p for j in range(k)]


def undigits(ds, p):
    return sum(c * p**j for j, c in enumerate(ds))


def mat2_mul(x, y, p):
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return (((a * e + b * g) % p, (a * f + b * h) % p), ((c * e + d * g) % p, (c * f + d * h) % p))


def mat2_from_index(i, p):
    a, b, c, d = digits(i, p, 4)
    return ((a, b), (c, d))


def mat2_index(m, p):
    return undigits([m[0][0], m[0][1], m[1][0], m[1][1]], p)


def f2_subspaces_all_zero_divisors(r, dim):
    """All ``dim``-dimensional F_2-subspaces of an F_2-algebra made of zero divisors."""
    zd = [x for x in range(r.size) if b_is_zero_divisor(r, x)]
    found = set()
    for basis in combinations([x for x in zd if x], dim):
        span = {0}
        for v in basis:
            span |= {r.add(s, v) for s in span}
        if len(span) == 2**dim and all(b_is_zero_divisor(r, x) for x in span):
            found.add(frozenset(span))
    return found


def all_pairs(n):
    return product(range(n), repeat=2)
