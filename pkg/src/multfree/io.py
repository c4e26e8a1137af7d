"""File schemas (JSON) and the line-delimited structured output format."""

from __future__ import annotations

import json
import re
from enum import Enum
from fractions import Fraction
from pathlib import Path

from . import data as builtin
from .classify import LocalOracleTable, OracleRow
from .errors import InputError, SchemaError
from .glue import LocalSystem, LocalSystemAssignment
from .linalg import Sublattice
from .polytope import RationalPolytope
from .roots import RootDatum

SCHEMA_VERSION = 1
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


# ---------------------------------------------------------------------------
# scalars

def parse_rational(value, field: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(field, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            pass
    raise SchemaError(field, f"expected an integer or a 'p/q' string, got {value!r}")


def parse_int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(field, f"expected an integer, got {value!r}")
    return value


def _vector(value, field, parse, length=None):
    if not isinstance(value, list):
        raise SchemaError(field, f"expected a list, got {value!r}")
    out = [parse(x, f"{field}[{i}]") for i, x in enumerate(value)]
    if length is not None and len(out) != length:
        raise SchemaError(field, f"expected {length} entries, got {len(out)}")
    return out


def _list(obj, key, field):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{field}.{key}" if field else key, "missing")
    v = obj[key]
    if not isinstance(v, list):
        raise SchemaError(f"{field}.{key}" if field else key, "expected a list")
    return v


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(str(path), f"not valid JSON ({e.msg} at line {e.lineno})") from None
    except OSError as e:
        raise SchemaError(str(path), f"cannot read file ({e.strerror})") from None


# ---------------------------------------------------------------------------
# records

def load_datum(obj, field: str = "datum") -> RootDatum:
    """``{rank, roots, coroots, positive}`` or ``{builtin: name}``."""
    if not isinstance(obj, dict):
        raise SchemaError(field, "expected an object")
    if "builtin" in obj:
        try:
            return builtin.get(obj["builtin"])
        except KeyError as e:
            raise SchemaError(f"{field}.builtin", str(e.args[0])) from None
    if "rank" not in obj:
        raise SchemaError(f"{field}.rank", "missing")
    n = parse_int(obj["rank"], f"{field}.rank")
    roots = [_vector(r, f"{field}.roots[{i}]", parse_int, n) for i, r in enumerate(_list(obj, "roots", field))]
    cos = [_vector(c, f"{field}.coroots[{i}]", parse_int, n) for i, c in enumerate(_list(obj, "coroots", field))]
    if len(roots) != len(cos):
        raise SchemaError(f"{field}.coroots", "must be parallel to roots")
    if "positive" in obj:
        pos = _vector(obj["positive"], f"{field}.positive", parse_int)
        return RootDatum(n, tuple(map(tuple, roots)), tuple(map(tuple, cos)), tuple(pos))
    # no positive system given: the listed roots are simple roots
    try:
        return RootDatum.from_simple(n, roots, cos)
    except InputError as e:
        raise SchemaError(f"{field}.roots", str(e)) from None


def dump_datum(Phi: RootDatum) -> dict:
    return {"rank": Phi.rank, "roots": [list(r) for r in Phi.roots],
            "coroots": [list(c) for c in Phi.coroots], "positive": list(Phi.positive)}


def load_polytope(obj, field: str = "polytope") -> RationalPolytope:
    """``{dim, inequalities: [{normal, offset}]}`` or ``{dim, vertices}``."""
    if not isinstance(obj, dict) or "dim" not in obj:
        raise SchemaError(f"{field}.dim", "missing")
    d = parse_int(obj["dim"], f"{field}.dim")
    if "vertices" in obj and "inequalities" not in obj:
        pts = [_vector(p, f"{field}.vertices[{i}]", parse_rational, d)
               for i, p in enumerate(_list(obj, "vertices", field))]
        return RationalPolytope.from_vertices(pts)
    ineqs = []
    for i, rec in enumerate(_list(obj, "inequalities", field)):
        f = f"{field}.inequalities[{i}]"
        if not isinstance(rec, dict) or "normal" not in rec or "offset" not in rec:
            raise SchemaError(f, "needs 'normal' and 'offset'")
        ineqs.append((_vector(rec["normal"], f + ".normal", parse_rational, d),
                      parse_rational(rec["offset"], f + ".offset")))
    return RationalPolytope(d, ineqs)


def dump_polytope(P: RationalPolytope) -> dict:
    return {"dim": P.dim, "inequalities": [{"normal": [str(x) for x in n], "offset": str(b)}
                                           for n, b in P.inequalities]}


def load_lattice(obj, n: int | None = None, field: str = "lattice") -> Sublattice:
    """``{rank, generators}``."""
    if not isinstance(obj, dict):
        raise SchemaError(field, "expected an object")
    rank = parse_int(obj["rank"], f"{field}.rank") if "rank" in obj else n
    if rank is None:
        raise SchemaError(f"{field}.rank", "missing")
    gens = [_vector(g, f"{field}.generators[{i}]", parse_int, rank)
            for i, g in enumerate(_list(obj, "generators", field))]
    return Sublattice(gens, rank)


def load_assignment(obj, P: RationalPolytope, Phi: RootDatum | None = None,
                    field: str = "assignment") -> LocalSystemAssignment:
    """``{faces: [{tight, simple_roots, coroots?}]}``; missing coroots are
    looked up in the datum."""
    systems = {}
    for i, rec in enumerate(_list(obj, "faces", field)):
        f = f"{field}.faces[{i}]"
        if not isinstance(rec, dict):
            raise SchemaError(f, "expected an object")
        tight = tuple(sorted(_vector(rec.get("tight"), f + ".tight", parse_int)))
        roots = [tuple(_vector(r, f"{f}.simple_roots[{j}]", parse_int, P.dim))
                 for j, r in enumerate(rec.get("simple_roots", []))]
        if "coroots" in rec:
            cos = [tuple(_vector(c, f"{f}.coroots[{j}]", parse_int, P.dim)) for j, c in enumerate(rec["coroots"])]
        elif Phi is not None:
            try:
                cos = [Phi.coroot_of(r) for r in roots]
            except KeyError as e:
                raise SchemaError(f + ".simple_roots", f"{e.args[0]} is not a root of the datum") from None
        else:
            raise SchemaError(f + ".coroots", "missing and no datum given")
        systems[tight] = LocalSystem(tuple(roots), tuple(cos))
    return LocalSystemAssignment(P, systems)


def load_cover(obj, field: str = "cover") -> list[RationalPolytope]:
    return [load_polytope(p, f"{field}.pieces[{i}]") for i, p in enumerate(_list(obj, "pieces", field))]


def load_oracle(obj, field: str = "oracle") -> LocalOracleTable:
    """``{rows: [{type, simple_roots, lattice, cones}]}``."""
    rows = []
    for i, rec in enumerate(_list(obj, "rows", field)):
        f = f"{field}.rows[{i}]"
        if not isinstance(rec, dict) or not isinstance(rec.get("type"), str):
            raise SchemaError(f + ".type", "missing")
        roots = tuple(sorted(tuple(_vector(r, f + ".simple_roots", parse_int)) for r in rec.get("simple_roots", [])))
        gens = [_vector(g, f + ".lattice", parse_int) for g in _list(rec, "lattice", f)]
        n = len(roots[0]) if roots else (len(gens[0]) if gens else 0)
        L = Sublattice(gens, n)
        cones = tuple(tuple(sorted(tuple(_vector(r, f + ".cones", parse_int)) for r in cone))
                      for cone in _list(rec, "cones", f))
        rows.append(OracleRow(rec["type"], roots, tuple(tuple(b) for b in L.basis), cones))
    return LocalOracleTable(rows)


# ---------------------------------------------------------------------------
# structured output

def jsonable(x):
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Sublattice):
        return [list(b) for b in x.basis]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def encode_record(rec: dict) -> str:
    return json.dumps(jsonable(rec), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def header(command: str) -> dict:
    return {"record": "header", "schema_version": SCHEMA_VERSION, "command": command}
