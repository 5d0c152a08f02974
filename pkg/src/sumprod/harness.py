"""Seeded set generators, recipe dispatch and the sweep/export harness.

Every generated set depends only on ``(seed, instance_id)``, and the worker
pool preserves instance order, so sweep output does not depend on the
number of threads.
"""

from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .certificates import VARIANTS
from .errors import ConfigParse, EmptySweep, SumprodError
from .freiman import homogeneous_structure_general
from .ringio import ring_from_name
from .sets import RSet
from .setops import growth_report
from .special import algebra_experiment, cyclic_ring_experiment, division_ring_experiment, product_ring_experiment
from .sr import SrConfig
from .structure import homogeneous_structure_invertible, inhomogeneous_structure, subring_closure, validate_certificate

SCHEMA = 1
EXPORT_COLUMNS = ("instance_id", "ring", "card_A", "K_inhom", "K_hom", "outcome", "ratio")
RECIPES = ("division", "product", "cyclic", "algebra", "inhom", "hom-unit", "hom-general")
THREADS_ENV = "SUMPROD_THREADS"


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    kind: str
    params: tuple

    def __str__(self):
        return ":".join([self.kind, *map(str, self.params)])

    def __call__(self, ring, rng: np.random.Generator) -> RSet:
        N = ring.size
        if self.kind == "random":
            n = min(self.params[0], N)
            return RSet.from_indices(ring, rng.choice(N, size=n, replace=False))
        if self.kind == "progression":
            start, step, length = self.params
            x, out = start % N, []
            for _ in range(length):
                out.append(x)
                x = int(ring._add(x, step % N))
            return RSet.from_indices(ring, out)
        if self.kind == "subring-sample":
            frac = self.params[0]
            g = int(rng.integers(1, N)) if N > 1 else 0
            S = subring_closure(RSet.from_indices(ring, [g]))
            k = max(1, math.ceil(float(frac) * len(S)))
            return RSet.from_indices(ring, rng.choice(S.indices, size=k, replace=False))
        raise ConfigParse(f"unknown generator {self.kind!r}")


def parse_generator(text: str) -> Generator:
    """``random:n``, ``progression:start:step:len`` or ``subring-sample:fraction``."""
    kind, *rest = text.strip().split(":")
    try:
        if kind == "random" and len(rest) == 1:
            params = (int(rest[0]),)
            if params[0] < 1:
                raise ValueError
        elif kind == "progression" and len(rest) == 3:
            params = tuple(int(v) for v in rest)
            if params[2] < 1:
                raise ValueError
        elif kind == "subring-sample" and len(rest) == 1:
            params = (Fraction(rest[0]),)
            if not 0 < params[0] <= 1:
                raise ValueError
        else:
            raise ValueError
    except ValueError:
        raise ConfigParse(f"bad generator {text!r}") from None
    return Generator(kind, params)


def instance_rng(seed: int, instance_id: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(instance_id)])


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------


@dataclass
class RecipeOutcome:
    outcome: str
    branch: str | None
    ratio: Fraction | None
    valid: bool
    payload: dict = field(default_factory=dict)


def _cert_ratio(cert):
    return getattr(cert, "ratio", None)


def run_recipe(recipe: str, A: RSet, cfg: SrConfig = SrConfig(), n_max: int = 6) -> RecipeOutcome:
    """Run one recipe on ``A`` and validate whatever it certifies."""
    if recipe in ("division", "product", "cyclic", "algebra"):
        if recipe == "algebra":
            res = algebra_experiment(A, n_max=n_max)
        else:
            fn = {"division": division_ring_experiment, "product": product_ring_experiment, "cyclic": cyclic_ring_experiment}[recipe]
            res = fn(A, cfg=cfg)
        cert = res.certificate
        valid = cert is None or _validate(res.subject, cert)
        return RecipeOutcome(res.outcome, res.branch, _cert_ratio(cert), valid, res.to_dict())
    if recipe == "inhom":
        cert = inhomogeneous_structure(A, cfg=cfg)
    elif recipe == "hom-unit":
        cert = homogeneous_structure_invertible(A, cfg=cfg)
    elif recipe == "hom-general":
        cert = homogeneous_structure_general(A, n_max=n_max)
    else:
        raise ConfigParse(f"unknown recipe {recipe!r}")
    return RecipeOutcome(cert.variant, None, _cert_ratio(cert), _validate(A, cert), cert.to_dict())


def _validate(A, cert) -> bool:
    if cert.variant == "FreimanModel":
        return cert.ok
    return validate_certificate(A, cert)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


@dataclass
class SweepRow:
    instance_id: int
    ring: str
    A: list
    growth: dict
    outcome: str
    branch: str | None
    ratio: Fraction | None
    valid: bool
    error: str | None = None
    wall_time: float | None = None

    def to_dict(self, timing: bool = False):
        out = {
            "instance_id": self.instance_id,
            "ring": self.ring,
            "card_A": len(self.A),
            "A": self.A,
            "growth": self.growth,
            "outcome": self.outcome,
            "branch": self.branch,
            "ratio": None if self.ratio is None else str(self.ratio),
            "valid": self.valid,
            "error": self.error,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out


@dataclass
class SweepResult:
    recipe: str
    generator: str
    seed: int
    rows: list[SweepRow]

    def to_dict(self, timing: bool = False):
        return {
            "schema": SCHEMA,
            "recipe": self.recipe,
            "generator": self.generator,
            "seed": self.seed,
            "rows": [r.to_dict(timing) for r in self.rows],
        }


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else 1
    return max(1, int(threads))


def _run_instance(args):
    instance_id, ring, gen, seed, recipe, cfg, n_max = args
    t0 = time.perf_counter()
    A = gen(ring, instance_rng(seed, instance_id))
    rep = growth_report(A)
    try:
        res = run_recipe(recipe, A, cfg, n_max)
        outcome, branch, ratio, valid, err = res.outcome, res.branch, res.ratio, res.valid, None
    except SumprodError as exc:
        outcome, branch, ratio, valid, err = "none", None, None, False, f"{type(exc).__name__}: {exc}"
    return SweepRow(
        instance_id, ring.descriptor, A.tolist(), rep.to_dict(),
        outcome, branch, ratio, valid, err, time.perf_counter() - t0,
    )


def sweep(
    recipe: str,
    rings: list,
    generator: Generator | str,
    seed: int = 0,
    count: int = 1,
    cfg: SrConfig = SrConfig(),
    n_max: int = 6,
    threads: int | None = None,
) -> SweepResult:
    """Run ``count`` generated instances per ring; rows come back in instance order."""
    if recipe not in RECIPES:
        raise ConfigParse(f"unknown recipe {recipe!r}; expected one of {', '.join(RECIPES)}")
    gen = parse_generator(generator) if isinstance(generator, str) else generator
    built = [ring_from_name(r) if isinstance(r, str) else r for r in rings]
    for ring in built:  # warm the lazily computed attributes before fanning out
        ring.zero_divisor_mask, ring.one, ring.commutative
    jobs = []
    for ring in built:
        for _ in range(count):
            jobs.append((len(jobs), ring, gen, seed, recipe, cfg, n_max))
    if not jobs:
        raise EmptySweep("sweep has no instances")
    workers = resolve_threads(threads)
    if workers == 1:
        rows = [_run_instance(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_instance, jobs))
    return SweepResult(recipe, str(gen), seed, rows)


def export_plot_data(result) -> str:
    """CSV with the fixed columns of :data:`EXPORT_COLUMNS`.

    Accepts a :class:`SweepResult` or its JSON dictionary.
    """
    rows = result.to_dict()["rows"] if isinstance(result, SweepResult) else result.get("rows", [])
    if not rows:
        raise EmptySweep("nothing to export")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EXPORT_COLUMNS)
    for r in rows:
        outcome = r["outcome"]
        assert outcome in VARIANTS or outcome == "none", outcome
        g = r["growth"]
        w.writerow([r["instance_id"], r["ring"], r["card_A"], g["K_inhom"], g["K_hom"], outcome, r["ratio"] or ""])
    return buf.getvalue()


def sweep_csv(result: SweepResult, timing: bool = False) -> str:
    cols = ["instance_id", "ring", "card_A", "sumset", "difference", "product", "homogeneous",
            "inhomogeneous", "zero_divisor_count_in_diff", "K_inhom", "K_hom", "outcome", "branch", "ratio", "valid"]
    if timing:
        cols.append("wall_time")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in result.rows:
        d = row.to_dict(timing)
        g = d["growth"]
        vals = [d["instance_id"], d["ring"], d["card_A"]]
        vals += [g[k] for k in cols[3:11]]
        vals += [d["outcome"], d["branch"] or "", d["ratio"] or "", d["valid"]]
        if timing:
            vals.append(f"{row.wall_time:.6f}")
        w.writerow(vals)
    return buf.getvalue()
