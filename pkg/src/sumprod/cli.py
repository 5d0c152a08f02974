"""Command-line entry point: ``sumprod <subcommand> ...``.

Every subcommand prints one JSON document carrying ``"schema": 1`` (``sweep``
and ``export`` can emit CSV instead). Exit status is 0 on success, 2 when the
input violates the growth hypotheses of the requested operation and 1 on any
other error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .errors import ConfigParse, HypothesisViolated, SumprodError
from .extraction import katz_tao_extract, validate_extraction
from .freiman import build_freiman_model, compute_graded_groups, homogeneous_structure_general
from .harness import SCHEMA, export_plot_data, instance_rng, parse_generator, sweep, sweep_csv
from .rings import check_ring_axioms, classify_non_zero_divisors, units
from .ringio import parse_set_literal, read_set_file, ring_from_name
from .ruzsa import plunnecke_check, ruzsa_cover, triangle_check, validate_cover
from .setops import (
    additive_energy,
    difference_set,
    dilate,
    growth_report,
    iterated,
    product_set,
    representation_count,
    sumset,
)
from .special import (
    algebra_experiment,
    cyclic_ring_experiment,
    division_ring_experiment,
    m2_annihilator_spaces,
    product_ring_experiment,
)
from .sr import UNIT, SrConfig, compute_sr, verify_sr_properties
from .structure import homogeneous_structure_invertible, inhomogeneous_structure, validate_certificate

log = logging.getLogger("sumprod")

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigParse(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _load_sets(args, ring, count: int):
    """Up to ``count`` sets from --set/--set-b/--set-c, --set-file or --gen."""
    sets = []
    if args.set_file:
        sets = read_set_file(ring, args.set_file)
    elif args.gen:
        gen = parse_generator(args.gen)
        sets = [gen(ring, instance_rng(args.seed, i)) for i in range(count)]
    else:
        for lit in (args.set, getattr(args, "set_b", None), getattr(args, "set_c", None)):
            if lit is not None:
                sets.append(parse_set_literal(ring, lit))
    if not sets:
        raise ConfigParse("no input set: pass --set, --set-file or --gen")
    return sets


def _sets(args, ring, needed: int):
    sets = _load_sets(args, ring, needed)
    if len(sets) < needed:
        raise ConfigParse(f"this operation needs {needed} sets, got {len(sets)}")
    return sets[:needed]


def _element(ring, text):
    if text is None:
        return None
    try:
        return ring.parse_element(text)
    except (ValueError, IndexError) as exc:
        raise ConfigParse(str(exc)) from None


def _cfg(args) -> SrConfig:
    return SrConfig(C0=args.c0, threshold_override=args.tau)


def _ring(args):
    try:
        return ring_from_name(args.ring)
    except (OSError, KeyError) as exc:
        raise ConfigParse(f"cannot load ring {args.ring!r}: {exc}") from None


def _add_ring(p):
    p.add_argument("--ring", required=True, help="ring spec file or catalog name (z9, gf9, f3xf3, m2f2, ...)")


def _add_sets(p, extra: int = 0):
    p.add_argument("--set", help="set literal such as '{1,2,4}'")
    if extra >= 1:
        p.add_argument("--set-b", help="second set literal")
    if extra >= 2:
        p.add_argument("--set-c", help="third set literal")
    p.add_argument("--set-file", help="file with one set literal per line")
    p.add_argument("--gen", help="random:n | progression:start:step:len | subring-sample:fraction")
    p.add_argument("--seed", type=int, default=0)


def _add_sr(p):
    p.add_argument("--k", type=_fraction, help="growth parameter K (default: measured)")
    p.add_argument("--c0", type=float, default=4.0, help="threshold exponent C0 in K^C0 |A|")
    p.add_argument("--tau", type=int, help="pin the threshold tau")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_ring_check(args):
    ring = _ring(args)
    rep = check_ring_axioms(ring)
    return {
        "ring": ring.descriptor,
        "size": ring.size,
        "commutative": ring.commutative,
        "has_identity": ring.has_identity,
        "one": ring.one,
        "non_zero_divisors": classify_non_zero_divisors(ring).tolist(),
        "units": units(ring).tolist(),
        "axioms": rep.to_dict(),
        "ok": rep.ok,
    }


def cmd_setop(args):
    ring = _ring(args)
    op = args.op
    sets = _load_sets(args, ring, 2)
    A = sets[0]
    B = (sets[1] if len(sets) > 1 else A) if op in ("sum", "difference", "product", "energy", "representation") else None
    out = {"ring": ring.descriptor, "op": op, "A": A.tolist()}
    if B is not None:
        out["B"] = B.tolist()
    if op == "sum":
        res = sumset(A, B)
    elif op == "difference":
        res = difference_set(A, B)
    elif op == "product":
        res = product_set(A, B)
    elif op == "iterated-sum":
        res = iterated(A, args.n, "sum")
    elif op == "iterated-product":
        res = iterated(A, args.n, "product")
    elif op in ("dilate-left", "dilate-right"):
        r = _element(ring, args.r)
        if r is None:
            raise ConfigParse("dilation needs --r")
        res = dilate(r, A, op.split("-")[1])
    elif op == "energy":
        out["energy"] = additive_energy(A, B)
        return out
    else:  # representation
        x = _element(ring, args.x)
        if x is None:
            raise ConfigParse("representation count needs --x")
        out["count"] = representation_count(A, B, x, args.kind)
        return out
    out.update(result=res.tolist(), size=len(res), symbolic=[ring.format_element(i) for i in res])
    return out


def cmd_growth(args):
    ring = _ring(args)
    A = _sets(args, ring, 1)[0]
    return {"ring": ring.descriptor, "A": A.tolist(), "growth": growth_report(A).to_dict()}


def cmd_ruzsa(args):
    ring = _ring(args)
    if args.op == "cover":
        A, B = _sets(args, ring, 2)
        w = ruzsa_cover(A, B, args.mode)
        return {"ring": ring.descriptor, "op": "cover", "witness": w.to_dict(), "validated": validate_cover(A, B, w)}
    if args.op == "triangle":
        A, B, C = _sets(args, ring, 3)
        return {"ring": ring.descriptor, "op": "triangle", "result": triangle_check(A, B, C).to_dict()}
    sets = _load_sets(args, ring, 2)
    A, B = sets[0], (sets[1] if len(sets) > 1 else sets[0])
    ns = [int(v) for v in args.n.split(",")]
    if len(ns) > 4:
        raise ConfigParse("--n takes at most four counts")
    ns += [0] * (4 - len(ns))
    return {"ring": ring.descriptor, "op": "plunnecke", "n": ns, "result": plunnecke_check(A, B, *ns).to_dict()}


def cmd_extract(args):
    ring = _ring(args)
    A = _sets(args, ring, 1)[0]
    out = katz_tao_extract(A, args.k, args.zd_threshold)
    return {"ring": ring.descriptor, "A": A.tolist(), "outcome": out.to_dict(), "validated": validate_extraction(A, out.K, out)}


def _parse_r(ring, text):
    if text is None or text.strip().lower() == "unit":
        return UNIT
    return _element(ring, text)


def cmd_sr(args):
    ring = _ring(args)
    A = _sets(args, ring, 1)[0]
    K = args.k if args.k is not None else growth_report(A).K_hom
    s = compute_sr(A, K, _parse_r(ring, args.r), _cfg(args))
    return {"ring": ring.descriptor, "A": A.tolist(), "K": str(K), "sr": s.to_dict()}


def cmd_sr_verify(args):
    ring = _ring(args)
    A = _sets(args, ring, 1)[0]
    K = args.k if args.k is not None else growth_report(A).K_hom
    scope = None
    if args.scope:
        scope = [_parse_r(ring, s.strip()) for s in args.scope.split(";")]
    rep = verify_sr_properties(A, K, _cfg(args), scope)
    return {"ring": ring.descriptor, "A": A.tolist(), "report": rep.to_dict()}


def cmd_structure(args):
    ring = _ring(args)
    A = _sets(args, ring, 1)[0]
    if args.mode == "inhom":
        cert = inhomogeneous_structure(A, args.k, _cfg(args), args.zd_threshold, tighten=not args.no_tighten)
    else:
        cert = homogeneous_structure_invertible(
            A, args.k, _element(ring, args.a), _cfg(args), args.zd_threshold, tighten=not args.no_tighten
        )
    valid = validate_certificate(A, cert)
    if not valid:
        raise SumprodError("certificate failed validation")
    return {"ring": ring.descriptor, "A": A.tolist(), "certificate": cert.to_dict(), "validated": valid}


def cmd_freiman(args):
    ring = _ring(args)
    A = _sets(args, ring, 1)[0]
    a = _element(ring, args.a)
    if args.k is not None or args.zd_threshold is not None:
        res = homogeneous_structure_general(A, args.k, args.n_max, args.zd_threshold, a)
        if res.variant != "FreimanModel":
            return {"ring": ring.descriptor, "A": A.tolist(), "certificate": res.to_dict()}
        model = res
        gg = compute_graded_groups(A, args.n_max, model.a)
    else:
        gg = compute_graded_groups(A, args.n_max, a)
        model = build_freiman_model(A, gg, n_max=args.n_max)
    if not model.ok:
        raise SumprodError(f"model verification failed: {model.verification}")
    return {"ring": ring.descriptor, "A": A.tolist(), "graded_groups": gg.to_dict(), "model": model.to_dict()}


def cmd_experiment(args):
    ring = _ring(args)
    A = _sets(args, ring, 1)[0]
    if args.recipe == "division":
        res = division_ring_experiment(A, args.k, _cfg(args), args.zd_threshold)
    elif args.recipe == "product":
        res = product_ring_experiment(A, args.k, _cfg(args), args.threshold)
    elif args.recipe == "cyclic":
        res = cyclic_ring_experiment(A, args.k, _cfg(args), args.threshold)
    else:
        res = algebra_experiment(A, args.k, args.dim_min, args.n_max, args.threshold)
    out = {"ring": ring.descriptor, "A": A.tolist(), "experiment": res.to_dict()}
    if args.recipe == "algebra" and args.annihilators:
        out["annihilator_spaces"] = [w.to_dict() for w in m2_annihilator_spaces(ring)]
    return out


def cmd_sweep(args):
    rings = [r.strip() for r in args.rings.split(",") if r.strip()]
    res = sweep(args.recipe, rings, args.gen, args.seed, args.count, _cfg(args), args.n_max, args.threads)
    if args.format == "csv":
        return sweep_csv(res, args.timing)
    return res.to_dict(args.timing)


def cmd_export(args):
    try:
        data = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigParse(f"cannot read sweep JSON {args.input!r}: {exc}") from None
    return export_plot_data(data)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sumprod", description="Sum-product experiments in small finite rings.")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ring-check", help="ring axioms, R^* and units")
    _add_ring(p)
    p.set_defaults(func=cmd_ring_check)

    p = sub.add_parser("setop", help="sumsets, product sets, dilates, energy")
    _add_ring(p)
    _add_sets(p, 1)
    p.add_argument(
        "--op", required=True,
        choices=["sum", "difference", "product", "iterated-sum", "iterated-product",
                 "dilate-left", "dilate-right", "energy", "representation"],
    )
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--r", help="dilation factor")
    p.add_argument("--x", help="target element for representation counts")
    p.add_argument("--kind", choices=["sum", "product", "difference"], default="sum")
    p.set_defaults(func=cmd_setop)

    p = sub.add_parser("growth", help="growth report of A")
    _add_ring(p)
    _add_sets(p)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("ruzsa", help="covering, triangle and Plünnecke checks")
    _add_ring(p)
    _add_sets(p, 2)
    p.add_argument("--op", choices=["cover", "triangle", "plunnecke"], required=True)
    p.add_argument("--mode", choices=["plus", "minus"], default="plus")
    p.add_argument("--n", default="2,2,0,0", help="n1,n2,n3,n4 for plunnecke")
    p.set_defaults(func=cmd_ruzsa)

    p = sub.add_parser("extract", help="Katz-Tao extraction")
    _add_ring(p)
    _add_sets(p)
    p.add_argument("--k", type=_fraction)
    p.add_argument("--zd-threshold", type=_fraction)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("sr", help="one structured set S_r")
    _add_ring(p)
    _add_sets(p)
    _add_sr(p)
    p.add_argument("--r", help="element, or 'unit' for the formal identity (default)")
    p.set_defaults(func=cmd_sr)

    p = sub.add_parser("sr-verify", help="check the S_r properties")
    _add_ring(p)
    _add_sets(p)
    _add_sr(p)
    p.add_argument("--scope", help="';'-separated elements (or 'unit'); default: unit and all of R^*")
    p.set_defaults(func=cmd_sr_verify)

    p = sub.add_parser("structure", help="subring certificates")
    _add_ring(p)
    _add_sets(p)
    _add_sr(p)
    p.add_argument("--mode", choices=["inhom", "hom-unit"], default="inhom")
    p.add_argument("--a", help="invertible element of A (hom-unit)")
    p.add_argument("--zd-threshold", type=_fraction)
    p.add_argument("--no-tighten", action="store_true", help="report the pinned threshold only")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("freiman", help="graded groups and the model ring")
    _add_ring(p)
    _add_sets(p)
    p.add_argument("--a", help="element of (A-A) ∩ R^* (default: smallest)")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--k", type=_fraction, help="check K_hom <= K and the zero-divisor branch first")
    p.add_argument("--zd-threshold", type=_fraction)
    p.set_defaults(func=cmd_freiman)

    p = sub.add_parser("experiment", help="ring-family recipes")
    _add_ring(p)
    _add_sets(p)
    _add_sr(p)
    p.add_argument("--recipe", choices=["division", "product", "cyclic", "algebra"], required=True)
    p.add_argument("--threshold", type=_fraction, help="branch (i) threshold (default 1/K)")
    p.add_argument("--zd-threshold", type=_fraction)
    p.add_argument("--dim-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--annihilators", action="store_true", help="also list the M_2 annihilator spaces")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("sweep", help="seeded batch over several rings")
    p.add_argument("--recipe", required=True,
                   choices=["division", "product", "cyclic", "algebra", "inhom", "hom-unit", "hom-general"])
    p.add_argument("--rings", required=True, help="comma-separated ring files or catalog names")
    p.add_argument("--gen", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="instances per ring")
    p.add_argument("--c0", type=float, default=4.0)
    p.add_argument("--tau", type=int)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--threads", type=int, help="worker count (default: $SUMPROD_THREADS or 1)")
    p.add_argument("--timing", action="store_true", help="include wall times (output no longer reproducible)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="plot-ready CSV from a sweep JSON file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_export)
    return parser


def _emit(result, command: str, out_path: str | None):
    if isinstance(result, str):
        text = result
    else:
        text = json.dumps({"schema": SCHEMA, "command": command, **result}, indent=2, ensure_ascii=False) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
        result = args.func(args)
        if isinstance(result, dict) and result.get("schema") == SCHEMA:
            result = {k: v for k, v in result.items() if k != "schema"}
        _emit(result, args.command, args.out)
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except SumprodError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
