"""Ring-spec text format, catalog shorthands and set literals.

One declaration per file::

    kind=cyclic q=6
    kind=gf p=3 k=2 mod=1,0,1          # coefficients ascending: x^2 + 1
    kind=product parts=f3.ring,f3.ring # paths relative to this file
    kind=matrix d=2 base=f2.ring
    kind=table n=3                     # then n lines of add, n lines of mul

Catalog shorthands (usable wherever a ring path is accepted): ``z9``,
``gf9`` / ``gf3^2``, ``f3xf3`` (any ``x``-joined list of shorthands) and
``m2f3`` / ``m2z4``.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ConfigParse
from .rings import FiniteRing, RingSpec, build_ring, is_prime, split_top_level


def parse_ring_spec(text: str, base_dir: str | Path = ".") -> RingSpec:
    base_dir = Path(base_dir)
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ConfigParse("empty ring spec")
    fields = {}
    for tok in lines[0].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise ConfigParse(f"expected key=value, got {tok!r}")
        fields[key] = val
    kind = fields.get("kind")
    try:
        if kind == "cyclic":
            return RingSpec.cyclic(int(fields["q"]))
        if kind == "gf":
            p, k = int(fields["p"]), int(fields.get("k", 1))
            mod = fields.get("mod")
            coeffs = tuple(int(c) for c in mod.split(",")) if mod else None
            return RingSpec.gf(p, k, coeffs)
        if kind == "product":
            parts = [load_ring_spec(base_dir / name) for name in fields["parts"].split(",")]
            return RingSpec.product(*parts)
        if kind == "matrix":
            return RingSpec.matrix(int(fields["d"]), load_ring_spec(base_dir / fields["base"]))
        if kind == "table":
            n = int(fields["n"])
            rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
            if len(rows) != 2 * n:
                raise ConfigParse(f"table ring with n={n} needs {2 * n} table lines, got {len(rows)}")
            return RingSpec.table(rows[:n], rows[n:])
    except KeyError as exc:
        raise ConfigParse(f"missing field {exc.args[0]!r} for kind={kind}") from None
    except ValueError as exc:
        raise ConfigParse(str(exc)) from None
    raise ConfigParse(f"unknown ring kind {kind!r}")


def load_ring_spec(path: str | Path) -> RingSpec:
    path = Path(path)
    if not path.exists():
        spec = catalog_spec(str(path.name) if path.parent == Path(".") else str(path))
        if spec is None:
            raise ConfigParse(f"no ring file or catalog entry named {str(path)!r}")
        return spec
    return parse_ring_spec(path.read_text(), path.parent)


def format_ring_spec(spec: RingSpec) -> str:
    """Inverse of :func:`parse_ring_spec` for the self-contained kinds."""
    if spec.kind == "cyclic":
        return f"kind=cyclic q={spec.q}\n"
    if spec.kind == "gf":
        return f"kind=gf p={spec.p} k={spec.k} mod={','.join(map(str, spec.modulus))}\n"
    if spec.kind == "table":
        n = len(spec.add_table)
        body = "\n".join(" ".join(map(str, r)) for r in spec.add_table + spec.mul_table)
        return f"kind=table n={n}\n{body}\n"
    raise ConfigParse(f"{spec.kind} specs reference other files; write the parts separately")


_GF = re.compile(r"^gf(\d+)(?:\^(\d+))?$")
_M = re.compile(r"^m(\d+)(.+)$")


def _prime_power(n: int):
    for p in range(2, n + 1):
        if n % p == 0:
            k, m = 0, n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


def catalog_spec(name: str) -> RingSpec | None:
    """Spec for a shorthand name, or ``None`` if the name is not recognised."""
    name = name.strip().lower()
    if "x" in name and not name.startswith("m"):
        parts = [catalog_spec(s) for s in name.split("x")]
        if len(parts) < 2 or any(p is None for p in parts):
            return None
        return RingSpec.product(*parts)
    if re.fullmatch(r"z\d+", name):
        return RingSpec.cyclic(int(name[1:]))
    m = re.fullmatch(r"f(\d+)", name)
    if m:
        name = "gf" + m.group(1)
    m = _GF.match(name)
    if m:
        a, b = int(m.group(1)), m.group(2)
        if b is not None:
            p, k = a, int(b)
        else:
            pk = _prime_power(a)
            if pk is None:
                return None
            p, k = pk
        if not is_prime(p):
            return None
        return RingSpec.gf(p, k)
    m = _M.match(name)
    if m:
        base = catalog_spec(m.group(2))
        return RingSpec.matrix(int(m.group(1)), base) if base is not None else None
    return None


def ring_from_name(name: str, **kw) -> FiniteRing:
    """Build a ring from a spec file path or a catalog shorthand."""
    return build_ring(load_ring_spec(name), **kw)


def parse_set_literal(ring: FiniteRing, text: str):
    """Parse ``{i1,i2,...}`` where items are indices or symbolic elements."""
    from .sets import RSet

    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ConfigParse(f"set literal must be wrapped in braces: {text!r}")
    items = [s for s in split_top_level(text[1:-1]) if s]
    try:
        idx = [ring.parse_element(s) for s in items]
    except (ValueError, IndexError) as exc:
        raise ConfigParse(str(exc)) from None
    return RSet.from_indices(ring, idx)


def format_set(A, symbolic: bool = False) -> str:
    if symbolic:
        return "{" + ",".join(A.ring.format_element(i) for i in A) + "}"
    return "{" + ",".join(str(i) for i in A) + "}"


def read_set_file(ring: FiniteRing, path: str | Path):
    out = []
    for ln in Path(path).read_text().splitlines():
        ln = ln.strip()
        if ln and not ln.startswith("#"):
            out.append(parse_set_literal(ring, ln))
    return out
