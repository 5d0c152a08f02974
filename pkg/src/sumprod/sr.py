"""The structured sets ``S_r = {x : |x·A + r·A| <= tau}`` and their properties.

For each ``r`` the full profile ``x -> |x·A + r·A|`` is computed once and
cached, so ``S_r`` at any threshold is a comparison against that vector.
``UNIT`` stands for a formal identity: ``S_UNIT = {x : |x·A + A| <= tau}``,
which equals ``S_1`` in unital rings and is defined in every ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .certificates import as_fraction
from .errors import EmptySet
from .sets import RSet
from .setops import difference_set, product_set, zero_divisors_in

_CHUNK = 1 << 21
FULL_SCAN_LIMIT = 64
SAMPLE_SIZE = 32
SAMPLE_SEED = 1729


class _Unit:
    __slots__ = ()

    def __repr__(self):
        return "UNIT"

    def __str__(self):
        return "unit"

    def __reduce__(self):
        return "UNIT"


UNIT = _Unit()


def r_label(r) -> str:
    return "unit" if r is UNIT else str(int(r))


@dataclass(frozen=True)
class SrConfig:
    C0: float = 4
    threshold_override: int | None = None

    def __post_init__(self):
        if self.C0 < 1:
            raise ValueError("C0 must be >= 1")

    def tau(self, K, card_A: int) -> int:
        if self.threshold_override is not None:
            return int(self.threshold_override)
        K = as_fraction(K)
        if float(self.C0).is_integer():
            return math.floor(K ** int(self.C0) * card_A)
        return math.floor(float(K) ** self.C0 * card_A)


@dataclass(frozen=True)
class SrSet:
    r: object  # int or UNIT
    tau: int
    members: RSet
    saturated: bool

    def to_dict(self):
        return {
            "r": r_label(self.r),
            "tau": self.tau,
            "members": self.members.tolist(),
            "size": len(self.members),
            "saturated": self.saturated,
        }


def sum_sizes(ring, xA: np.ndarray, rA: np.ndarray) -> np.ndarray:
    """``|row_i + rA|`` for every row of ``xA`` (an M x |A| index array)."""
    m = xA.shape[0]
    out = np.empty(m, dtype=np.int64)
    width = xA.shape[1] * rA.size
    rows = max(1, _CHUNK // max(width, 1))
    for s in range(0, m, rows):
        block = np.asarray(ring._add(xA[s : s + rows, :, None], rA[None, None, :])).reshape(-1, width)
        block = np.sort(block, axis=1)
        out[s : s + rows] = 1 + np.count_nonzero(np.diff(block, axis=1), axis=1)
    return out


class SrEngine:
    """Caches the size profiles ``x -> |x·A + r·A|`` for a fixed ``A``."""

    def __init__(self, A: RSet):
        if not A:
            raise EmptySet("S_r needs a non-empty A")
        self.A = A
        self.ring = A.ring
        idx = self.ring.elements()
        a = A.indices
        # xA for every x, row x
        self._xA = np.asarray(self.ring._mul(idx[:, None], a[None, :]), dtype=np.int64)
        self._profiles: dict = {}

    def r_dilate(self, r) -> np.ndarray:
        if r is UNIT:
            return self.A.indices
        return np.unique(np.asarray(self.ring._mul(int(r), self.A.indices)))

    def profile(self, r) -> np.ndarray:
        key = UNIT if r is UNIT else int(r)
        prof = self._profiles.get(key)
        if prof is None:
            prof = sum_sizes(self.ring, self._xA, self.r_dilate(r))
            prof.setflags(write=False)
            self._profiles[key] = prof
        return prof

    def members(self, r, tau: int) -> RSet:
        return RSet(self.ring, self.profile(r) <= tau)

    def sr(self, r, tau: int) -> SrSet:
        return SrSet(r, tau, self.members(r, tau), tau >= self.ring.size)

    def candidate_thresholds(self, rs=None) -> list[int]:
        """Distinct profile values: the only thresholds where some ``S_r`` changes."""
        keys = self._profiles.keys() if rs is None else rs
        vals = set()
        for r in keys:
            vals.update(int(v) for v in np.unique(self.profile(r)))
        return sorted(vals)


def compute_sr(A: RSet, K, r, cfg: SrConfig = SrConfig(), engine: SrEngine | None = None) -> SrSet:
    """``S_r`` at threshold ``cfg.tau(K, |A|)``; ``r`` may be ``UNIT``."""
    engine = engine or SrEngine(A)
    return engine.sr(r, cfg.tau(K, len(A)))


# ---------------------------------------------------------------------------
# property verification
# ---------------------------------------------------------------------------

PROPERTY_NAMES = {
    "i": "Self-improving property",
    "ii": "Size bound",
    "iii": "Additive structure",
    "iv": "Ring structure",
    "v": "Right-multiplicative structure",
    "vi": "Left-multiplicative structure",
    "vii": "Reflexivity",
    "viii": "Symmetry",
    "ix": "Transitivity",
}

EXACT = ("iii", "iv", "v", "vi", "vii", "viii", "ix")
# properties that hold for every threshold, independent of the hypotheses
UNCONDITIONAL = ("vi", "viii")


@dataclass
class PropertyRecord:
    key: str
    name: str
    applicable: bool
    passed: bool | None
    witnesses: list = field(default_factory=list)
    measured: dict = field(default_factory=dict)
    min_tau: int | None = None
    note: str = ""

    def to_dict(self):
        return {
            "key": self.key,
            "name": self.name,
            "applicable": self.applicable,
            "passed": self.passed,
            "witnesses": self.witnesses,
            "measured": self.measured,
            "min_tau": self.min_tau,
            "note": self.note,
        }


@dataclass
class PropertyReport:
    tau: int
    K: Fraction
    saturated: bool
    hypotheses: dict
    scope: list
    properties: dict[str, PropertyRecord]
    sr_sets: dict = field(default_factory=dict)

    def __getitem__(self, key) -> PropertyRecord:
        return self.properties[key]

    @property
    def ok(self) -> bool:
        return all(p.passed for p in self.properties.values() if p.applicable and p.passed is not None)

    def to_dict(self):
        return {
            "tau": self.tau,
            "K": str(self.K),
            "saturated": self.saturated,
            "hypotheses": self.hypotheses,
            "scope": [r_label(r) for r in self.scope],
            "ok": self.ok,
            "properties": {k: v.to_dict() for k, v in self.properties.items()},
            "sr_sets": {k: v for k, v in self.sr_sets.items()},
        }


class _Checker:
    def __init__(self, engine: SrEngine, scope, sample):
        self.e = engine
        self.ring = engine.ring
        self.scope = scope
        nzd = ~self.ring.zero_divisor_mask
        self.scope_star = [r for r in scope if r is UNIT or nzd[int(r)]]
        diff = difference_set(engine.A, engine.A)
        self.diff_star = [int(d) for d in diff.indices if nzd[d]]
        self.sample = sample

    def S(self, r, tau):
        return self.e.members(r, tau)

    def times(self, r, s):
        """``r*s`` with UNIT acting as identity."""
        if r is UNIT:
            return s
        if s is UNIT:
            return r
        return int(self.ring._mul(int(r), int(s)))

    def check(self, key, tau):
        return getattr(self, "_" + key)(tau)

    def _iii(self, tau):
        wit = []
        for r in self.scope_star:
            S = self.S(r, tau)
            for name, other in (("sum", S + S), ("difference", S - S)):
                bad = other.without(S)
                if bad:
                    x, y = self._preimage(S, bad.min, name)
                    wit.append({"r": r_label(r), "op": name, "x": x, "y": y, "result": bad.min})
                    break
        return not wit, wit

    def _preimage(self, S, target, op):
        f = self.ring._add if op == "sum" else self.ring._sub
        for x in S:
            for y in S:
                if int(f(x, y)) == target:
                    return x, y
        raise AssertionError("unreachable")

    def _iv(self, tau):
        S = self.S(UNIT, tau)
        wit = []
        for name, other in (("sum", S + S), ("difference", S - S), ("product", S * S)):
            bad = other.without(S)
            if bad:
                f = {"sum": self.ring._add, "difference": self.ring._sub, "product": self.ring._mul}[name]
                x, y = next((x, y) for x in S for y in S if int(f(x, y)) == bad.min)
                wit.append({"op": name, "x": x, "y": y, "result": bad.min})
        return not wit, wit

    def _v(self, tau):
        wit = []
        targets = [a for a in self.diff_star if a in set(int(s) for s in self.scope if s is not UNIT)]
        for r in self.scope_star:
            Sr = self.S(r, tau)
            for a in targets:
                ra = self.times(r, a)
                prod = Sr * self.S(a, tau)
                bad = prod.without(self.S(ra, tau))
                if bad:
                    wit.append({"r": r_label(r), "a": a, "ra": r_label(ra), "element": bad.min})
        return not wit, wit

    def _vi(self, tau):
        wit = []
        for r in self.scope:
            Sr = self.S(r, tau)
            for s in self.sample:
                sr = self.times(s, r)
                image = RSet.from_indices(self.ring, np.asarray(self.ring._mul(s, Sr.indices))) if Sr else Sr
                bad = image.without(self.S(sr, tau))
                if bad:
                    wit.append({"r": r_label(r), "s": int(s), "element": bad.min})
        return not wit, wit

    def _vii(self, tau):
        wit = []
        for r in self.scope:
            if r is UNIT:
                one = self.ring.one
                if one is not None and one not in self.S(UNIT, tau):
                    wit.append({"r": "unit", "element": one})
            elif int(r) not in self.S(r, tau):
                wit.append({"r": r_label(r)})
        return not wit, wit

    def _viii(self, tau):
        wit = []
        plain = [int(r) for r in self.scope if r is not UNIT]
        for i, r in enumerate(plain):
            for s in plain[i + 1 :]:
                if (r in self.S(s, tau)) != (s in self.S(r, tau)):
                    wit.append({"r": r, "s": s})
        return not wit, wit

    def _ix(self, tau):
        wit = []
        nzd = RSet(self.ring, ~self.ring.zero_divisor_mask)
        rs = self.scope_star
        for i, r in enumerate(rs):
            for s in rs[i + 1 :]:
                Sr, Ss = self.S(r, tau), self.S(s, tau)
                common = Sr & Ss & nzd
                if common and Sr != Ss:
                    wit.append({"r": r_label(r), "s": r_label(s), "common": common.min})
        return not wit, wit


def _log(x: float, base: float) -> float:
    return math.log(x) / math.log(base)


def verify_sr_properties(A: RSet, K, cfg: SrConfig = SrConfig(), scope=None, engine: SrEngine | None = None) -> PropertyReport:
    """Check the nine structural properties of the ``S_r`` at one threshold.

    Properties (i) and (ii) are measured as exponents in base ``max(K, 2)``;
    (iii)-(ix) are checked exactly. When the growth hypotheses fail, the
    hypothesis-dependent properties are reported as not applicable. A failing
    exact property carries witnesses and the smallest candidate threshold at
    which it passes.
    """
    K = as_fraction(K)
    engine = engine or SrEngine(A)
    ring = A.ring
    n, N = len(A), ring.size
    tau = cfg.tau(K, n)
    if scope is None:
        scope = [UNIT] + [int(r) for r in (~ring.zero_divisor_mask).nonzero()[0]]
    scope = list(scope)
    if ring.size <= FULL_SCAN_LIMIT:
        sample = [int(s) for s in ring.elements()]
    else:
        rng = np.random.default_rng(SAMPLE_SEED)
        sample = sorted(int(s) for s in rng.choice(N, SAMPLE_SIZE, replace=False))

    AA = product_set(A, A)
    diff = difference_set(A, A)
    hom = difference_set(AA, AA)
    zd = len(zero_divisors_in(diff))
    if float(cfg.C0).is_integer():
        zd_bound = K ** -int(cfg.C0) * n
    else:
        zd_bound = Fraction(float(K) ** -cfg.C0 * n)
    hyp = {
        "homogeneous_growth": len(hom) <= K * n,
        "product_lower_bound": len(AA) * K >= n,
        "few_zero_divisors": zd < zd_bound,
        "zero_divisor_count": zd,
    }
    hyp_ok = hyp["homogeneous_growth"] and hyp["product_lower_bound"] and hyp["few_zero_divisors"]
    saturated = tau >= N

    checker = _Checker(engine, scope, sample)
    props: dict[str, PropertyRecord] = {}

    base = float(max(K, 2))
    exps, size_exps = {}, {}
    for r in checker.scope_star:
        prof = engine.profile(r)
        members = prof <= tau
        if members.any():
            exps[r_label(r)] = round(_log(prof[members].max() / n, base), 12)
        size_exps[r_label(r)] = round(_log(max(int(members.sum()), 1) / n, base), 12)
    props["i"] = PropertyRecord("i", PROPERTY_NAMES["i"], hyp_ok, None, measured={"max_exponent": exps, "base": base})
    props["ii"] = PropertyRecord("ii", PROPERTY_NAMES["ii"], hyp_ok, None, measured={"size_exponent": size_exps, "base": base})

    for key in EXACT:
        applicable = hyp_ok or key in UNCONDITIONAL
        rec = PropertyRecord(key, PROPERTY_NAMES[key], applicable, None)
        if saturated and key not in UNCONDITIONAL:
            rec.passed = True
            rec.note = "vacuous: tau >= N, every S_r is the whole ring"
        else:
            passed, wit = checker.check(key, tau)
            rec.passed, rec.witnesses = passed, wit
            if not passed:
                rec.min_tau = _min_passing_tau(checker, key, engine)
        props[key] = rec

    sr_sets = {r_label(r): engine.members(r, tau).tolist() for r in scope}
    return PropertyReport(tau, K, saturated, hyp, scope, props, sr_sets)


def _min_passing_tau(checker: _Checker, key: str, engine: SrEngine) -> int | None:
    for t in engine.candidate_thresholds():
        if checker.check(key, t)[0]:
            return t
    return None
