"""Small finite rings with total arithmetic over canonical element indices.

Every ring has elements ``0 .. N-1`` with ``0`` the additive identity. The
index layout is fixed per kind so fixtures are stable:

* ``cyclic q``        index = residue value
* ``gf p k mod``      index = sum c_i p**i, c_i the polynomial coefficients
                      of the element (little-endian, constant term first)
* ``product parts``   mixed radix, first factor least significant
* ``matrix d base``   row-major entries, entry (0, 0) least significant digit
                      in radix ``len(base)``
* ``table n``         whatever the Cayley tables say

Arithmetic accepts python ints or integer numpy arrays (broadcast) and is
computed on the fly for structured kinds. Rings with at most ``memo_limit``
elements (default 1024) precompute full tables; results are identical.

Rings are never assumed unital or commutative: both properties are detected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .errors import (
    IndexOutOfRange,
    MalformedTable,
    NonPrimeModulus,
    ReducibleModulus,
    SizeLimitExceeded,
)

MAX_RING_SIZE = 65_536
MEMO_LIMIT = 1_024
AXIOM_EXHAUSTIVE_LIMIT = 4_096
AXIOM_SAMPLE_SEED = 20_080_101
AXIOM_SAMPLES = 1_000_000

_CHUNK = 1 << 22


def is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingSpec:
    """Declarative description of a ring; see :func:`build_ring`.

    ``kind`` is one of ``cyclic``, ``gf``, ``product``, ``matrix``, ``table``.
    Unused fields stay at their defaults.
    """

    kind: str
    q: int = 0
    p: int = 0
    k: int = 0
    modulus: tuple[int, ...] = ()
    parts: tuple["RingSpec", ...] = ()
    d: int = 0
    base: "RingSpec | None" = None
    add_table: tuple[tuple[int, ...], ...] = field(default=(), repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @staticmethod
    def cyclic(q: int) -> "RingSpec":
        return RingSpec("cyclic", q=q)

    @staticmethod
    def gf(p: int, k: int = 1, modulus=None) -> "RingSpec":
        if modulus is None:
            modulus = default_modulus(p, k)
        return RingSpec("gf", p=p, k=k, modulus=tuple(int(c) for c in modulus))

    @staticmethod
    def product(*parts: "RingSpec") -> "RingSpec":
        return RingSpec("product", parts=tuple(parts))

    @staticmethod
    def matrix(d: int, base: "RingSpec") -> "RingSpec":
        return RingSpec("matrix", d=d, base=base)

    @staticmethod
    def table(add_table, mul_table) -> "RingSpec":
        return RingSpec(
            "table",
            add_table=tuple(tuple(int(v) for v in row) for row in add_table),
            mul_table=tuple(tuple(int(v) for v in row) for row in mul_table),
        )

    def size(self) -> int:
        if self.kind == "cyclic":
            return self.q
        if self.kind == "gf":
            return self.p**self.k
        if self.kind == "product":
            n = 1
            for part in self.parts:
                n *= part.size()
            return n
        if self.kind == "matrix":
            return self.base.size() ** (self.d * self.d)
        if self.kind == "table":
            return len(self.add_table)
        raise MalformedTable(f"unknown ring kind {self.kind!r}")


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficients ascending)
# ---------------------------------------------------------------------------


def _poly_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    from sympy import GF as _GF, Poly, symbols

    x = symbols("x")
    poly = Poly(list(reversed(coeffs)), x, domain=_GF(p))
    return poly.degree() >= 1 and bool(poly.is_irreducible)


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree ``k`` over F_p.

    Candidates are ordered by the integer ``sum c_i p**i`` of their lower
    coefficients, so GF(9) gets x^2 + 1 and GF(4) gets x^2 + x + 1.
    """
    if not is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    if k == 1:
        return (0, 1)
    for m in range(p**k):
        low = [(m // p**i) % p for i in range(k)]
        coeffs = tuple(low + [1])
        if _poly_irreducible(coeffs, p):
            return coeffs
    raise ReducibleModulus(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------
# ring classes
# ---------------------------------------------------------------------------


def _as_index_array(a):
    return np.asarray(a, dtype=np.int64)


def _ret(x):
    x = np.asarray(x)
    if x.ndim == 0:
        return int(x)
    return x


class FiniteRing:
    """A finite ring on indices ``0..size-1``.

    Subclasses implement the raw vectorised operations ``_add_raw``,
    ``_mul_raw`` and ``_neg_raw`` and may override identity and zero-divisor
    detection with faster structural shortcuts.
    """

    kind = "abstract"

    def __init__(self, size: int, *, memo: bool | None = None, memo_limit: int = MEMO_LIMIT):
        self.size = int(size)
        self._tables = None
        if memo is None:
            memo = self.size <= memo_limit
        if memo:
            self._build_tables()

    # -- raw ops (override) -------------------------------------------------
    def _add_raw(self, a, b):  # pragma: no cover - abstract
        raise NotImplementedError

    def _mul_raw(self, a, b):  # pragma: no cover - abstract
        raise NotImplementedError

    def _neg_raw(self, a):  # pragma: no cover - abstract
        raise NotImplementedError

    def _one_candidate(self) -> int | None:
        return None

    # -- tables -------------------------------------------------------------
    def _build_tables(self):
        n = self.size
        idx = np.arange(n, dtype=np.int64)
        add = np.empty((n, n), dtype=np.int32)
        mul = np.empty((n, n), dtype=np.int32)
        rows = max(1, _CHUNK // max(n, 1))
        for s in range(0, n, rows):
            a = idx[s : s + rows, None]
            add[s : s + rows] = self._add_raw(a, idx[None, :])
            mul[s : s + rows] = self._mul_raw(a, idx[None, :])
        neg = self._neg_raw(idx).astype(np.int32)
        for t in (add, mul, neg):
            t.setflags(write=False)
        self._tables = (add, mul, neg)

    @property
    def memoized(self) -> bool:
        return self._tables is not None

    def tables(self):
        """Full ``(add, mul)`` Cayley tables, built on demand."""
        if self._tables is not None:
            return self._tables[0], self._tables[1]
        idx = np.arange(self.size, dtype=np.int64)
        return (
            self._add_raw(idx[:, None], idx[None, :]).astype(np.int32),
            self._mul_raw(idx[:, None], idx[None, :]).astype(np.int32),
        )

    # -- fast internal ops (no range checks) --------------------------------
    def _add(self, a, b):
        if self._tables is not None:
            return self._tables[0][a, b]
        return self._add_raw(_as_index_array(a), _as_index_array(b))

    def _mul(self, a, b):
        if self._tables is not None:
            return self._tables[1][a, b]
        return self._mul_raw(_as_index_array(a), _as_index_array(b))

    def _neg(self, a):
        if self._tables is not None:
            return self._tables[2][a]
        return self._neg_raw(_as_index_array(a))

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    # -- public ops ---------------------------------------------------------
    def _check(self, a):
        arr = _as_index_array(a)
        if arr.size and (arr.min() < 0 or arr.max() >= self.size):
            raise IndexOutOfRange(f"element index outside [0, {self.size})")
        return arr

    def add(self, a, b):
        return _ret(self._add(self._check(a), self._check(b)))

    def mul(self, a, b):
        return _ret(self._mul(self._check(a), self._check(b)))

    def neg(self, a):
        return _ret(self._neg(self._check(a)))

    def sub(self, a, b):
        return _ret(self._sub(self._check(a), self._check(b)))

    def power(self, a: int, n: int) -> int:
        if n < 1:
            raise ValueError("power needs n >= 1")
        out = a
        for _ in range(n - 1):
            out = int(self._mul(out, a))
        return out

    @property
    def zero(self) -> int:
        return 0

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    # -- detected structure -------------------------------------------------
    @cached_property
    def one(self) -> int | None:
        cand = self._one_candidate()
        idx = self.elements()
        if cand is not None:
            if np.array_equal(self._mul(cand, idx), idx) and np.array_equal(self._mul(idx, cand), idx):
                return int(cand)
            return None
        add, mul = self.tables()
        for e in range(self.size):
            if np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx):
                return e
        return None

    @property
    def has_identity(self) -> bool:
        return self.one is not None

    def _structural_commutative(self) -> bool | None:
        return None

    @cached_property
    def commutative(self) -> bool:
        guess = self._structural_commutative()
        if guess is not None and self.size > AXIOM_EXHAUSTIVE_LIMIT:
            return guess
        _, mul = self.tables()
        return bool(np.array_equal(mul, mul.T))

    def _structural_zero_divisor_mask(self):
        return None

    @cached_property
    def zero_divisor_mask(self) -> np.ndarray:
        """``True`` at ``r`` when ``r*a == 0`` or ``a*r == 0`` for some ``a != 0``."""
        mask = self._structural_zero_divisor_mask()
        if mask is None:
            n = self.size
            mask = np.zeros(n, dtype=bool)
            if n > 1:
                idx = self.elements()
                nz = idx[1:]
                rows = max(1, _CHUNK // n)
                for s in range(0, n, rows):
                    r = idx[s : s + rows, None]
                    left = (self._mul(r, nz[None, :]) == 0).any(axis=1)
                    right = (self._mul(nz[None, :], r) == 0).any(axis=1)
                    mask[s : s + rows] = left | right
        mask = np.asarray(mask, dtype=bool)
        mask.setflags(write=False)
        return mask

    # -- presentation -------------------------------------------------------
    def format_element(self, i: int) -> str:
        return str(int(i))

    def parse_element(self, text: str) -> int:
        text = text.strip()
        try:
            value = int(text)
        except ValueError:
            raise ValueError(f"cannot parse element {text!r} of {self.descriptor}") from None
        self._check(value)
        return value

    @property
    def descriptor(self) -> str:
        return f"{self.kind}({self.size})"

    def __repr__(self):
        return f"<FiniteRing {self.descriptor}>"

    def __len__(self):
        return self.size

    # prime-field coordinates, when the ring is an F_p-algebra with index
    # equal to sum c_i p**i
    def prime_field(self) -> int | None:
        return None


class CyclicRing(FiniteRing):
    kind = "cyclic"

    def __init__(self, q: int, **kw):
        self.q = int(q)
        super().__init__(self.q, **kw)

    def _add_raw(self, a, b):
        return (a + b) % self.q

    def _mul_raw(self, a, b):
        return (a * b) % self.q

    def _neg_raw(self, a):
        return (-a) % self.q

    def _one_candidate(self):
        return 1 % self.q

    def _structural_commutative(self):
        return True

    def _structural_zero_divisor_mask(self):
        if self.q == 1:
            return np.zeros(1, dtype=bool)
        return np.array([gcd(r, self.q) != 1 for r in range(self.q)], dtype=bool)

    @property
    def descriptor(self):
        return f"Z/{self.q}"

    def prime_field(self):
        return self.q if self.q > 1 and is_prime(self.q) else None


class GaloisField(FiniteRing):
    kind = "gf"
    symbol = "α"

    def __init__(self, p: int, k: int, modulus, **kw):
        p, k = int(p), int(k)
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        if k < 1:
            raise ReducibleModulus("field degree must be >= 1")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] == 0:
            raise ReducibleModulus(f"modulus must have degree exactly {k}")
        if not _poly_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        inv_lead = pow(modulus[-1], -1, p)
        self.p, self.k = p, k
        self.modulus = tuple((c * inv_lead) % p for c in modulus)
        self._weights = p ** np.arange(k, dtype=np.int64)
        # structure constants: digits of x^(i+j) reduced mod the modulus
        powers = [self._reduce_monomial(e) for e in range(2 * k - 1)]
        consts = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                consts[i, j] = powers[i + j]
        self._consts = consts
        super().__init__(p**k, **kw)

    def _reduce_monomial(self, e):
        k, p = self.k, self.p
        vec = [0] * max(k, e + 1)
        vec[e] = 1
        for deg in range(len(vec) - 1, k - 1, -1):
            c = vec[deg]
            if c:
                vec[deg] = 0
                for i in range(k):
                    vec[deg - k + i] = (vec[deg - k + i] - c * self.modulus[i]) % p
        return vec[:k]

    def _digits(self, a):
        return (a[..., None] // self._weights) % self.p

    def _encode(self, digits):
        return (digits % self.p) @ self._weights

    def _add_raw(self, a, b):
        return self._encode(self._digits(a) + self._digits(b))

    def _neg_raw(self, a):
        return self._encode(-self._digits(a))

    def _mul_raw(self, a, b):
        da, db = np.broadcast_arrays(self._digits(a), self._digits(b))
        prod = np.einsum("...i,...j,ijl->...l", da, db, self._consts, optimize=True)
        return self._encode(prod)

    def _one_candidate(self):
        return 1

    def _structural_commutative(self):
        return True

    def _structural_zero_divisor_mask(self):
        mask = np.zeros(self.size, dtype=bool)
        mask[0] = True
        return mask

    @property
    def descriptor(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def prime_field(self):
        return self.p

    def format_element(self, i):
        digits = [(int(i) // self.p**e) % self.p for e in range(self.k)]
        if self.k == 1:
            return str(digits[0])
        terms = []
        for e in range(self.k - 1, -1, -1):
            c = digits[e]
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                mono = self.symbol if e == 1 else f"{self.symbol}^{e}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def parse_element(self, text):
        text = text.strip().replace(" ", "").replace("x", self.symbol).replace("*", "")
        try:
            return super().parse_element(text)
        except ValueError:
            pass
        if not text:
            raise ValueError("empty element")
        alpha = 1 % self.size if self.k == 1 else self.p
        terms, cur = [], ""
        for ch in text:
            if ch in "+-" and cur:
                terms.append(cur)
                cur = ch
            else:
                cur += ch
        terms.append(cur)
        total = 0
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            term = term.lstrip("+-")
            if self.symbol in term:
                coef_s, _, exp_s = term.partition(self.symbol)
                exp_s = exp_s.lstrip("^")
                coef = int(coef_s) if coef_s else 1
                exp = int(exp_s) if exp_s else 1
                mono = self.power(alpha, exp) if exp >= 1 else 1
            else:
                coef, mono = int(term), 1
            coef = (sign * coef) % self.p
            value = int(self._mul(coef, mono)) if coef else 0
            total = int(self._add(total, value))
        return total


class ProductRing(FiniteRing):
    kind = "product"

    def __init__(self, parts, **kw):
        self.parts = tuple(parts)
        if not self.parts:
            raise MalformedTable("product needs at least one factor")
        self._radix = []
        r = 1
        for part in self.parts:
            self._radix.append(r)
            r *= part.size
        super().__init__(r, **kw)

    def components(self, a):
        a = _as_index_array(a)
        return [(a // rad) % part.size for rad, part in zip(self._radix, self.parts)]

    def combine(self, comps):
        out = 0
        for rad, c in zip(self._radix, comps):
            out = out + _as_index_array(c) * rad
        return out

    def project(self, j, a):
        return (_as_index_array(a) // self._radix[j]) % self.parts[j].size

    def _add_raw(self, a, b):
        ca, cb = self.components(a), self.components(b)
        return self.combine([p._add(x, y) for p, x, y in zip(self.parts, ca, cb)])

    def _mul_raw(self, a, b):
        ca, cb = self.components(a), self.components(b)
        return self.combine([p._mul(x, y) for p, x, y in zip(self.parts, ca, cb)])

    def _neg_raw(self, a):
        return self.combine([p._neg(x) for p, x in zip(self.parts, self.components(a))])

    def _one_candidate(self):
        ones = [p.one for p in self.parts]
        if any(o is None for o in ones):
            return None
        return int(self.combine(ones))

    @cached_property
    def one(self):
        # identity exists iff every factor has one
        if any(p.one is None for p in self.parts):
            return None
        return super().one

    def _structural_commutative(self):
        return all(p.commutative for p in self.parts)

    def _structural_zero_divisor_mask(self):
        # (r_j) kills a nonzero (a_j) iff some r_j is a zero divisor of its factor
        comps = self.components(self.elements())
        mask = np.zeros(self.size, dtype=bool)
        for part, c in zip(self.parts, comps):
            if part.size > 1:
                mask |= part.zero_divisor_mask[c]
        return mask

    @property
    def descriptor(self):
        return "x".join(p.descriptor for p in self.parts)

    def prime_field(self):
        ps = {p.prime_field() for p in self.parts}
        if len(ps) == 1 and None not in ps:
            return ps.pop()
        return None

    def format_element(self, i):
        comps = self.components(i)
        return "(" + ",".join(p.format_element(int(c)) for p, c in zip(self.parts, comps)) + ")"

    def parse_element(self, text):
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            items = split_top_level(text[1:-1])
            if len(items) != len(self.parts):
                raise ValueError(f"expected {len(self.parts)} components in {text!r}")
            comps = [p.parse_element(s) for p, s in zip(self.parts, items)]
            return int(self.combine(comps))
        return super().parse_element(text)


class MatrixRing(FiniteRing):
    kind = "matrix"

    def __init__(self, d: int, base: FiniteRing, **kw):
        self.d = int(d)
        if self.d < 1:
            raise MalformedTable("matrix dimension must be >= 1")
        self.base = base
        nb = base.size
        self._weights = nb ** np.arange(self.d * self.d, dtype=np.int64)
        super().__init__(nb ** (self.d * self.d), **kw)

    def entries(self, a):
        a = _as_index_array(a)
        flat = (a[..., None] // self._weights) % self.base.size
        return flat.reshape(a.shape + (self.d, self.d))

    def from_entries(self, m):
        m = _as_index_array(m)
        return m.reshape(m.shape[:-2] + (self.d * self.d,)) @ self._weights

    def _add_raw(self, a, b):
        return self.from_entries(self.base._add(self.entries(a), self.entries(b)))

    def _neg_raw(self, a):
        return self.from_entries(self.base._neg(self.entries(a)))

    def _mul_raw(self, a, b):
        ea, eb = self.entries(a), self.entries(b)
        ea, eb = np.broadcast_arrays(ea, eb)
        base, d = self.base, self.d
        out = np.zeros(ea.shape, dtype=np.int64)
        for i in range(d):
            for j in range(d):
                acc = base._mul(ea[..., i, 0], eb[..., 0, j])
                for k in range(1, d):
                    acc = base._add(acc, base._mul(ea[..., i, k], eb[..., k, j]))
                out[..., i, j] = acc
        return self.from_entries(out)

    def _one_candidate(self):
        if self.base.one is None:
            return None
        m = np.zeros((self.d, self.d), dtype=np.int64)
        np.fill_diagonal(m, self.base.one)
        return int(self.from_entries(m))

    def _structural_commutative(self):
        return self.d == 1 and self.base.commutative

    def _base_is_field(self):
        b = self.base
        return b.has_identity and b.commutative and b.size > 1 and int(b.zero_divisor_mask.sum()) == 1

    def _structural_zero_divisor_mask(self):
        if self.d == 2 and self._base_is_field():
            e = self.entries(self.elements())
            b = self.base
            det = b._sub(b._mul(e[:, 0, 0], e[:, 1, 1]), b._mul(e[:, 0, 1], e[:, 1, 0]))
            return np.asarray(det) == 0
        return None

    @property
    def descriptor(self):
        return f"M{self.d}({self.base.descriptor})"

    def prime_field(self):
        return self.base.prime_field()

    def format_element(self, i):
        e = self.entries(int(i))
        rows = ["[" + ",".join(self.base.format_element(int(v)) for v in row) + "]" for row in e]
        return "[" + ",".join(rows) + "]"

    def parse_element(self, text):
        text = text.strip().replace(" ", "")
        if text.startswith("[[") and text.endswith("]]"):
            rows = split_top_level(text[1:-1])
            if len(rows) != self.d:
                raise ValueError(f"expected {self.d} rows in {text!r}")
            m = np.zeros((self.d, self.d), dtype=np.int64)
            for i, row in enumerate(rows):
                if not (row.startswith("[") and row.endswith("]")):
                    raise ValueError(f"bad matrix row {row!r}")
                items = split_top_level(row[1:-1])
                if len(items) != self.d:
                    raise ValueError(f"expected {self.d} entries in row {row!r}")
                for j, s in enumerate(items):
                    m[i, j] = self.base.parse_element(s)
            return int(self.from_entries(m))
        return super().parse_element(text)


class TableRing(FiniteRing):
    kind = "table"

    def __init__(self, add_table, mul_table, **kw):
        add = np.asarray(add_table, dtype=np.int64)
        mul = np.asarray(mul_table, dtype=np.int64)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape[0] < 1:
            raise MalformedTable("add table must be a non-empty N x N array")
        n = add.shape[0]
        if mul.shape != (n, n):
            raise MalformedTable("mul table must match the add table shape")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise MalformedTable("table entries must lie in [0, N)")
        idx = np.arange(n)
        if not (np.array_equal(add[0], idx) and np.array_equal(add[:, 0], idx)):
            raise MalformedTable("index 0 must be the additive identity")
        hits = add == 0
        if not hits.any(axis=1).all():
            raise MalformedTable("some element has no additive inverse")
        self._add_t = add
        self._mul_t = mul
        self._neg_t = hits.argmax(axis=1)
        kw.setdefault("memo", True)
        super().__init__(n, **kw)

    def _add_raw(self, a, b):
        return self._add_t[a, b]

    def _mul_raw(self, a, b):
        return self._mul_t[a, b]

    def _neg_raw(self, a):
        return self._neg_t[a]

    def tables(self):
        return self._add_t.astype(np.int32), self._mul_t.astype(np.int32)


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split ``text`` at ``sep`` outside of (), [] and {} brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def build_ring(spec: RingSpec, *, max_size: int = MAX_RING_SIZE, memo: bool | None = None) -> FiniteRing:
    """Realise ``spec`` as a :class:`FiniteRing`.

    Raises NonPrimeModulus, ReducibleModulus, SizeLimitExceeded or
    MalformedTable on a bad spec.
    """
    kind = spec.kind
    if kind == "cyclic":
        if spec.q < 1:
            raise MalformedTable("cyclic ring needs q >= 1")
    elif kind == "gf":
        if not is_prime(spec.p):
            raise NonPrimeModulus(f"{spec.p} is not prime")
        if spec.k < 1:
            raise ReducibleModulus("field degree must be >= 1")
    elif kind == "product":
        if not spec.parts:
            raise MalformedTable("product needs at least one factor")
    elif kind == "matrix":
        if spec.d < 1 or spec.base is None:
            raise MalformedTable("matrix ring needs d >= 1 and a base ring")
    elif kind == "table":
        n = len(spec.add_table)
        if n < 1 or len(spec.mul_table) != n or any(len(r) != n for r in spec.add_table + spec.mul_table):
            raise MalformedTable("table ring needs two N x N tables")
    else:
        raise MalformedTable(f"unknown ring kind {kind!r}")

    n = spec.size()
    if n > max_size:
        raise SizeLimitExceeded(f"ring has {n} elements, limit is {max_size}")

    if kind == "cyclic":
        return CyclicRing(spec.q, memo=memo)
    if kind == "gf":
        return GaloisField(spec.p, spec.k, spec.modulus, memo=memo)
    if kind == "product":
        parts = [build_ring(p, max_size=max_size) for p in spec.parts]
        return ProductRing(parts, memo=memo)
    if kind == "matrix":
        base = build_ring(spec.base, max_size=max_size)
        return MatrixRing(spec.d, base, memo=memo)
    return TableRing(spec.add_table, spec.mul_table)


def arithmetic(ring: FiniteRing, op: str, a: int, b: int | None = None) -> int:
    """Apply ``op`` in {add, mul, neg, sub} to element indices."""
    if op == "neg":
        if b is not None:
            raise ValueError("neg is unary")
        return ring.neg(a)
    if b is None:
        raise ValueError(f"{op} is binary")
    if op == "add":
        return ring.add(a, b)
    if op == "mul":
        return ring.mul(a, b)
    if op == "sub":
        return ring.sub(a, b)
    raise ValueError(f"unknown op {op!r}")


def classify_non_zero_divisors(ring: FiniteRing):
    """Return R^* (the non-zero-divisors) as an :class:`~sumprod.sets.RSet`."""
    from .sets import RSet

    return RSet(ring, ~ring.zero_divisor_mask)


def units(ring: FiniteRing) -> np.ndarray:
    """Indices with a two-sided inverse (empty if the ring has no identity)."""
    one = ring.one
    if one is None:
        return np.zeros(0, dtype=np.int64)
    idx = ring.elements()
    out = []
    for r in idx:
        right = np.flatnonzero(ring._mul(r, idx) == one)
        if right.size and (ring._mul(right, r) == one).any():
            out.append(int(r))
    return np.asarray(out, dtype=np.int64)


def inverse(ring: FiniteRing, a: int) -> int | None:
    """Two-sided inverse of ``a`` by brute force, or ``None``."""
    one = ring.one
    if one is None:
        return None
    idx = ring.elements()
    for b in np.flatnonzero(ring._mul(a, idx) == one):
        if int(ring._mul(b, a)) == one:
            return int(b)
    return None


# ---------------------------------------------------------------------------
# axiom checking
# ---------------------------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    informational: bool = False

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": list(self.witness) if self.witness is not None else None,
            "informational": self.informational,
        }


@dataclass
class AxiomReport:
    ring: str
    size: int
    mode: str  # "exhaustive" or "sampled"
    results: list[AxiomResult]
    samples: int | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results if not r.informational)

    def __getitem__(self, name) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def commutative(self) -> bool:
        return self["mul_commutative"].passed

    def to_dict(self):
        return {
            "ring": self.ring,
            "size": self.size,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "ok": self.ok,
            "axioms": [r.to_dict() for r in self.results],
        }


def _first(mask):
    hit = np.argwhere(mask)
    return tuple(int(v) for v in hit[0]) if hit.size else None


def check_ring_axioms(
    ring: FiniteRing,
    *,
    exhaustive_limit: int = AXIOM_EXHAUSTIVE_LIMIT,
    samples: int = AXIOM_SAMPLES,
    seed: int = AXIOM_SAMPLE_SEED,
) -> AxiomReport:
    """Check the ring axioms and report counterexample triples.

    Rings up to ``exhaustive_limit`` elements are scanned over all triples;
    larger rings use ``samples`` random triples drawn with ``seed``.
    Multiplicative commutativity and the identity are informational entries.
    """
    n = ring.size
    if n <= exhaustive_limit:
        return _axioms_exhaustive(ring)
    return _axioms_sampled(ring, samples, seed)


def _axioms_exhaustive(ring):
    n = ring.size
    add, mul = ring.tables()
    add = add.astype(np.int64)
    mul = mul.astype(np.int64)
    idx = np.arange(n)
    res = {}

    zero_row = np.array_equal(add[0], idx) and np.array_equal(add[:, 0], idx)
    res["add_identity"] = (zero_row, None if zero_row else (int(_first((add[0] != idx) | (add[:, 0] != idx))[0]),))
    comm = add == add.T
    res["add_commutative"] = (bool(comm.all()), _first(~comm))
    has_inv = (add == 0).any(axis=1)
    res["add_inverse"] = (bool(has_inv.all()), None if has_inv.all() else (int(np.flatnonzero(~has_inv)[0]),))

    def triple_scan(f):
        for a in range(n):
            bad = f(a)
            if bad.any():
                b, c = _first(bad)
                return False, (a, b, c)
        return True, None

    res["add_associative"] = triple_scan(lambda a: add[add[a]] != add[a][add])
    res["mul_associative"] = triple_scan(lambda a: mul[mul[a]] != mul[a][mul])
    res["left_distributive"] = triple_scan(lambda a: mul[a][add] != add[mul[a][:, None], mul[a][None, :]])
    res["right_distributive"] = triple_scan(
        lambda a: mul[:, a][add] != add[mul[:, a][:, None], mul[:, a][None, :]]
    )
    mcomm = mul == mul.T
    results = [AxiomResult(k, bool(v[0]), v[1]) for k, v in res.items()]
    results.append(AxiomResult("mul_commutative", bool(mcomm.all()), _first(~mcomm), informational=True))
    results.append(AxiomResult("mul_identity", ring.one is not None, None, informational=True))
    return AxiomReport(ring.descriptor, n, "exhaustive", results)


def _axioms_sampled(ring, samples, seed):
    rng = np.random.default_rng(seed)
    n = ring.size
    checks = {
        "add_identity": lambda a, b, c: ring._add(a, 0) != a,
        "add_commutative": lambda a, b, c: ring._add(a, b) != ring._add(b, a),
        "add_inverse": lambda a, b, c: ring._add(a, ring._neg(a)) != 0,
        "add_associative": lambda a, b, c: ring._add(ring._add(a, b), c) != ring._add(a, ring._add(b, c)),
        "mul_associative": lambda a, b, c: ring._mul(ring._mul(a, b), c) != ring._mul(a, ring._mul(b, c)),
        "left_distributive": lambda a, b, c: ring._mul(a, ring._add(b, c))
        != ring._add(ring._mul(a, b), ring._mul(a, c)),
        "right_distributive": lambda a, b, c: ring._mul(ring._add(b, c), a)
        != ring._add(ring._mul(b, a), ring._mul(c, a)),
        "mul_commutative": lambda a, b, c: ring._mul(a, b) != ring._mul(b, a),
    }
    witness = {k: None for k in checks}
    chunk = 1 << 17
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        a, b, c = (rng.integers(0, n, m) for _ in range(3))
        for name, f in checks.items():
            if witness[name] is None:
                bad = np.flatnonzero(f(a, b, c))
                if bad.size:
                    i = bad[0]
                    witness[name] = (int(a[i]), int(b[i]), int(c[i]))
        done += m
    results = [
        AxiomResult(k, witness[k] is None, witness[k], informational=(k == "mul_commutative")) for k in checks
    ]
    results.append(AxiomResult("mul_identity", ring.one is not None, None, informational=True))
    return AxiomReport(ring.descriptor, n, "sampled", results, samples=samples, seed=seed)
