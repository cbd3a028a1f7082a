"""JSON text formats for every object, plus canonical serialization.

Rationals are written as ``"p/q"`` strings; ints and ``"p/q"`` strings are
accepted on input.  Floats are rejected since they are not exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .automorphism import AutGroup, Automorphism, validate_group
from .cohomology import Cocycle1D, Cocycle1F, Cocycle2F, Cocycle2R
from .curve import Curve, Edge, EdgePoint, Point, Vertex, VertexPoint, point_key, refine
from .divisor import Divisor
from .errors import ParseError
from .invariantize import InvariantizationReport
from .plfunction import MODES, Z, PLFunction
from .principal import Certificate
from .rational import fmt_length, fmt_rational, to_length, to_rational

KINDS = ("1F", "1D", "2R", "2F")
#: scalar-valued 1-cochains are only checked, never wrapped in a cocycle type
CHECK_KINDS = KINDS + ("1R",)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _no_float(s: str):
    raise ParseError(f"floating point literal {s} is not exact; write rationals as \"p/q\"")


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _get(obj: Any, key: str, kind: type | tuple = object) -> Any:
    if not isinstance(obj, Mapping):
        raise ParseError(f"expected an object with key {key!r}, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ParseError(f"key {key!r} has the wrong type")
    return value


# -- curves and points ----------------------------------------------------------

def curve_to_json(curve: Curve) -> dict:
    return {
        "vertices": [{"id": v.id, "infinite": v.infinite} for v in curve.vertices.values()],
        "edges": [
            {"id": e.id, "ends": [e.tail, e.head], "length": fmt_length(e.length), "multiplicity": e.multiplicity}
            for e in curve.edges.values()
        ],
    }


def curve_from_json(obj: Any) -> Curve:
    vertices = []
    for v in _get(obj, "vertices", list):
        infinite = v.get("infinite", False) if isinstance(v, Mapping) else None
        if not isinstance(infinite, bool):
            raise ParseError("vertex 'infinite' must be a boolean")
        vertices.append(Vertex(_get(v, "id", str), infinite))
    edges = []
    for e in _get(obj, "edges", list):
        ends = _get(e, "ends", list)
        if len(ends) != 2 or not all(isinstance(x, str) for x in ends):
            raise ParseError("edge 'ends' must be two vertex ids")
        mult = e.get("multiplicity", 1)
        if not isinstance(mult, int) or isinstance(mult, bool):
            raise ParseError("edge 'multiplicity' must be an integer")
        edges.append(Edge(_get(e, "id", str), ends[0], ends[1], to_length(_get(e, "length", (str, int))), mult))
    return Curve(vertices, edges)


def point_to_json(p: Point) -> dict:
    if isinstance(p, VertexPoint):
        return {"vertex": p.vertex}
    return {"edge": p.edge, "offset": fmt_rational(p.offset)}


def point_from_json(curve: Curve, obj: Any) -> Point:
    if isinstance(obj, Mapping) and "vertex" in obj:
        p: Point = VertexPoint(_get(obj, "vertex", str))
    else:
        p = curve.point_on(_get(obj, "edge", str), to_rational(_get(obj, "offset", (str, int))))
    return curve.check_point(p)


def _points(curve: Curve, raw: Any) -> list[Point]:
    if not isinstance(raw, list):
        raise ParseError("'refinement' must be a list of points")
    return [point_from_json(curve, p) for p in raw]


def _edge_points(points) -> list[dict]:
    return [point_to_json(p) for p in sorted(points, key=point_key) if isinstance(p, EdgePoint)]


# -- functions ------------------------------------------------------------------

def function_to_json(f: PLFunction) -> dict:
    """Values at the vertices of the coarsest refinement on which ``f`` is linear."""
    sub = refine(f.curve, f.breakpoints())
    values = {v: fmt_rational(f(sub.vertex_image[v])) for v in sub.fine.finite_vertices()}
    return {
        "refinement": _edge_points(f.breakpoints()),
        "values": values,
        "leaf_slopes": {e: fmt_rational(s) for e, s in f.tails.items()},
        "mode": f.mode,
    }


def function_from_json(curve: Curve, obj: Any, mode: str | None = None) -> PLFunction:
    sub = refine(curve, _points(curve, obj.get("refinement", []) if isinstance(obj, Mapping) else None))
    raw_values = _get(obj, "values", Mapping)
    unknown = set(raw_values) - set(sub.fine.finite_vertices())
    if unknown:
        raise ParseError(f"values given for unknown vertices {sorted(unknown)}")
    missing = set(sub.fine.finite_vertices()) - set(raw_values)
    if missing:
        raise ParseError(f"values missing for vertices {sorted(missing)}")
    values, knots = {}, {}
    for v, x in raw_values.items():
        q = sub.vertex_image[v]
        if isinstance(q, VertexPoint):
            values[q.vertex] = to_rational(x)
        else:
            knots.setdefault(q.edge, []).append((q.offset, to_rational(x)))
    slopes = obj.get("leaf_slopes", {})
    if not isinstance(slopes, Mapping):
        raise ParseError("'leaf_slopes' must be an object")
    for e in slopes:
        if e not in curve.edges or not curve.edges[e].infinite:
            raise ParseError(f"leaf_slopes names {e!r}, which is not a leaf")
    tails = {e: to_rational(s) for e, s in slopes.items()}
    m = mode or obj.get("mode", Z)
    if m not in MODES:
        raise ParseError(f"mode must be one of {MODES}")
    return PLFunction(curve, values, knots, tails, m)


# -- divisors -------------------------------------------------------------------

def divisor_terms(d: Divisor) -> list[dict]:
    return [{"point": point_to_json(p), "coeff": a} for p, a in d.terms.items()]


def divisor_to_json(d: Divisor) -> dict:
    return {"terms": divisor_terms(d)}


def divisor_from_json(curve: Curve, obj: Any) -> Divisor:
    terms: dict[Point, int] = {}
    for t in _get(obj, "terms", list):
        p = point_from_json(curve, _get(t, "point", Mapping))
        terms[p] = terms.get(p, 0) + _get(t, "coeff", int)
    return Divisor(curve, terms)


# -- automorphisms and groups -------------------------------------------------------

def automorphism_to_json(g: Automorphism) -> dict:
    return {
        "refinement": _edge_points(g.model.fine_points()),
        "vertex_map": dict(g.vertex_map),
        "edge_map": {e: {"to": t, "reversed": r} for e, (t, r) in g.edge_map.items()},
    }


def automorphism_from_json(curve: Curve, obj: Any) -> Automorphism:
    sub = refine(curve, _points(curve, obj.get("refinement", []) if isinstance(obj, Mapping) else None))
    vm = _get(obj, "vertex_map", Mapping)
    em = {}
    for e, t in _get(obj, "edge_map", Mapping).items():
        rev = t.get("reversed", False) if isinstance(t, Mapping) else None
        if not isinstance(rev, bool):
            raise ParseError(f"edge_map entry for {e!r} needs a boolean 'reversed'")
        em[e] = (_get(t, "to", str), rev)
    return Automorphism(sub, vm, em)


def group_to_json(group: AutGroup) -> list:
    return [automorphism_to_json(g) for g in group.elements]


def group_from_json(curve: Curve, obj: Any) -> AutGroup:
    if isinstance(obj, Mapping) and "elements" in obj:
        obj = obj["elements"]
    if not isinstance(obj, list):
        raise ParseError("a group is a list of automorphisms")
    return validate_group(curve, [automorphism_from_json(curve, g) for g in obj])


# -- certificates, cocycles, reports -------------------------------------------------

def certificate_to_json(c: Certificate) -> dict:
    return {
        "edge": c.edge,
        "slope": fmt_rational(c.slope),
        "start": point_to_json(c.start),
        "end": point_to_json(c.end),
    }


def _value_to_json(x: Any) -> Any:
    if isinstance(x, PLFunction):
        return function_to_json(x)
    if isinstance(x, Divisor):
        return divisor_to_json(x)
    return fmt_rational(x)


def indexed(values) -> dict:
    return {str(i): _value_to_json(x) for i, x in enumerate(values)}


def pair_indexed(values: Mapping) -> dict:
    return {f"{a},{b}": _value_to_json(x) for (a, b), x in sorted(values.items())}


def cocycle_to_json(phi) -> dict:
    kind = {Cocycle1F: "1F", Cocycle1D: "1D", Cocycle2R: "2R", Cocycle2F: "2F"}[type(phi)]
    values = indexed(phi.values) if kind in ("1F", "1D") else pair_indexed(phi.values)
    return {"kind": kind, "group": group_to_json(phi.group), "values": values}


def _index(key: str, n: int) -> int:
    try:
        i = int(key)
    except ValueError:
        raise ParseError(f"bad element index {key!r}") from None
    if not 0 <= i < n:
        raise ParseError(f"element index {i} out of range")
    return i


def cocycle_values_from_json(curve: Curve, group: AutGroup, kind: str, raw: Any):
    """Decode the ``values`` of a cocycle of the given kind (without verifying it)."""
    n = group.order

    def one(x):
        if kind == "1F":
            return function_from_json(curve, x)
        if kind == "2F":
            return function_from_json(curve, x, mode="Q")
        if kind == "1D":
            return divisor_from_json(curve, x)
        return to_rational(x)

    if kind.startswith("1"):
        if isinstance(raw, list):
            items = list(enumerate(raw))
        elif isinstance(raw, Mapping):
            items = [(_index(k, n), v) for k, v in raw.items()]
        else:
            raise ParseError("cocycle values must be a list or an object")
        out = dict((i, one(v)) for i, v in items)
        if set(out) != set(range(n)):
            raise ParseError(f"a 1-cochain needs one value per element (0..{n - 1})")
        return [out[i] for i in range(n)]
    if isinstance(raw, list):
        return {(i, j): one(raw[i][j]) for i in range(n) for j in range(n)}
    if not isinstance(raw, Mapping):
        raise ParseError("cocycle values must be a nested list or an object keyed by \"i,j\"")
    out = {}
    for k, v in raw.items():
        parts = k.split(",")
        if len(parts) != 2:
            raise ParseError(f"bad pair index {k!r}")
        out[_index(parts[0].strip(), n), _index(parts[1].strip(), n)] = one(v)
    if len(out) != n * n:
        raise ParseError(f"a 2-cochain needs {n * n} values")
    return out


def cocycle_from_json(curve: Curve, obj: Any):
    kind = _get(obj, "kind", str)
    if kind not in KINDS:
        raise ParseError(f"cocycle kind must be one of {KINDS}")
    group = group_from_json(curve, _get(obj, "group"))
    values = cocycle_values_from_json(curve, group, kind, _get(obj, "values"))
    cls = {"1F": Cocycle1F, "1D": Cocycle1D, "2R": Cocycle2R, "2F": Cocycle2F}[kind]
    return cls(group, values)


def report_to_json(r: InvariantizationReport) -> dict:
    return {
        "input": divisor_terms(r.divisor),
        "witnesses": indexed(r.witnesses),
        "constants": pair_indexed(r.constants),
        "psi": indexed(r.psi),
        "sign": r.sign,
        "adjusted": indexed(r.adjusted),
        "average": function_to_json(r.average),
        "invariant_divisor": divisor_terms(r.invariant_divisor),
        "checks": dict(r.checks),
    }


def fraction_to_json(x: Fraction) -> str:
    return fmt_rational(x)
