"""Rational functions on tropical curves: continuous piecewise-linear maps.

A :class:`PLFunction` stores its values at the finite model vertices, the
interior breakpoints ("knots") of every edge as ``(offset, value)`` pairs,
and for each leaf the slope of the final, unbounded piece measured in the
direction of increasing offset (towards the infinite point).  The form is
canonical: a knot is kept only where the slope actually changes, so two
functions are equal exactly when their stored data agree.

Tropical multiplication is pointwise ``+`` and tropical addition is pointwise
``max``; both are provided along with the pullback action of automorphisms,
``ord`` and ``div``.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .curve import Curve, EdgePoint, Point, VertexPoint, refine, vertex_distances
from .errors import BaseMismatch, EvalAtInfinitePoint, ModeMismatch, NonIntegerSlope
from .rational import to_rational

if TYPE_CHECKING:
    from .automorphism import Automorphism
    from .divisor import Divisor

Z = "Z"
Q = "Q"
MODES = (Z, Q)

Knot = tuple[Fraction, Fraction]


class PLFunction:
    """A rational function (or, in ``Q`` mode, an element of M(X) ⊗ ℚ)."""

    __slots__ = ("curve", "values", "knots", "tails", "mode", "_bp")

    def __init__(
        self,
        curve: Curve,
        values: Mapping[str, object] | None = None,
        knots: Mapping[str, Iterable[tuple[object, object]]] | None = None,
        tails: Mapping[str, object] | None = None,
        mode: str = Z,
    ) -> None:
        if mode not in MODES:
            raise ValueError(f"mode must be 'Z' or 'Q', got {mode!r}")
        values = values or {}
        knots = knots or {}
        tails = tails or {}
        for name in list(values) + list(knots) + list(tails):
            if name not in curve.vertices and name not in curve.edges:
                raise BaseMismatch(f"{name!r} is not a vertex or edge of the base curve")
        self.curve = curve
        self.mode = mode
        self.values = {v: to_rational(values.get(v, 0)) for v in curve.finite_vertices()}
        self.tails = {e.id: to_rational(tails.get(e.id, 0)) for e in curve.edges.values() if e.infinite}
        self.knots: dict[str, tuple[Knot, ...]] = {}
        self._bp: dict[str, list[Knot]] = {}
        for e in curve.edges.values():
            raw = sorted((to_rational(x), to_rational(y)) for x, y in knots.get(e.id, ()))
            for (x0, y0), (x1, y1) in zip(raw, raw[1:]):
                if x0 == x1 and y0 != y1:
                    raise ValueError(f"conflicting values at offset {x0} on edge {e.id!r}")
            pts = [(Fraction(0), self.values[e.tail])]
            for x, y in raw:
                if not 0 < x < e.length:
                    raise ValueError(f"knot offset {x} outside edge {e.id!r}")
                if x != pts[-1][0]:
                    _push(pts, (x, y))
            if e.infinite:
                tail = self.tails[e.id]
                while len(pts) > 1 and _slope(pts[-2], pts[-1]) == tail:
                    pts.pop()
            else:
                _push(pts, (e.length, self.values[e.head]))
            self._bp[e.id] = pts
            inner = pts[1:] if e.infinite else pts[1:-1]
            self.knots[e.id] = tuple(inner)
        if mode == Z:
            for eid, pts in self._bp.items():
                for a, b in zip(pts, pts[1:]):
                    s = _slope(a, b)
                    if s.denominator != 1:
                        raise NonIntegerSlope(f"slope {s} on edge {eid!r} is not an integer", edge=eid, slope=str(s))
            for eid, s in self.tails.items():
                if s.denominator != 1:
                    raise NonIntegerSlope(f"leaf slope {s} on edge {eid!r} is not an integer", edge=eid, slope=str(s))

    # -- evaluation ------------------------------------------------------

    def _value_on(self, eid: str, x: Fraction) -> Fraction:
        pts = self._bp[eid]
        i = bisect_left(pts, (x,))
        if i < len(pts) and pts[i][0] == x:
            return pts[i][1]
        if i == len(pts):
            x0, y0 = pts[-1]
            return y0 + self.tails[eid] * (x - x0)
        (x0, y0), (x1, y1) = pts[i - 1], pts[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def __call__(self, p: Point) -> Fraction:
        return evaluate(self, p)

    def slopes(self, eid: str) -> list[Fraction]:
        """Slopes of the successive pieces of edge ``eid`` in increasing-offset direction."""
        pts = self._bp[eid]
        out = [_slope(a, b) for a, b in zip(pts, pts[1:])]
        if self.curve.edges[eid].infinite:
            out.append(self.tails[eid])
        return out

    def breakpoints(self) -> list[Point]:
        """Interior points where the function bends."""
        return [EdgePoint(e, x) for e, ks in self.knots.items() for x, _ in ks]

    def is_constant(self) -> bool:
        if any(self.knots.values()) or any(self.tails.values()):
            return False
        return len(set(self.values.values())) <= 1

    # -- identity ---------------------------------------------------------

    def _key(self) -> tuple:
        return (tuple(self.values.items()), tuple(self.knots.items()), tuple(self.tails.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLFunction):
            return NotImplemented
        return self.curve == other.curve and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"PLFunction(mode={self.mode}, values={dict(self.values)}, knots={self.knots}, tails={self.tails})"

    # -- arithmetic sugar ------------------------------------------------

    def __add__(self, other: PLFunction) -> PLFunction:
        return trop_mul(self, other)

    def __sub__(self, other: PLFunction) -> PLFunction:
        return trop_div(self, other)

    def __neg__(self) -> PLFunction:
        return trop_scale(self, -1)


def _slope(a: Knot, b: Knot) -> Fraction:
    return (b[1] - a[1]) / (b[0] - a[0])


def _push(pts: list[Knot], p: Knot) -> None:
    if len(pts) >= 2 and _slope(pts[-2], pts[-1]) == _slope(pts[-1], p):
        pts.pop()
    pts.append(p)


def _same_base(fs: Sequence[PLFunction]) -> Curve:
    curve = fs[0].curve
    for f in fs[1:]:
        if f.curve != curve:
            raise BaseMismatch("functions live on different curves")
    return curve


def _same_mode(fs: Sequence[PLFunction]) -> str:
    modes = {f.mode for f in fs}
    if len(modes) > 1:
        raise ModeMismatch("cannot mix integer-slope and rational-slope functions; convert explicitly")
    return modes.pop()


# -- constructors -------------------------------------------------------------

def constant(curve: Curve, c: object = 0, mode: str = Z) -> PLFunction:
    c = to_rational(c)
    return PLFunction(curve, {v: c for v in curve.finite_vertices()}, mode=mode)


def with_mode(f: PLFunction, mode: str) -> PLFunction:
    """Reinterpret ``f`` in another coefficient mode (``Z`` checks integrality)."""
    return PLFunction(f.curve, f.values, f.knots, f.tails, mode)


def distance_function(curve: Curve, p: Point) -> PLFunction:
    """``x -> distance(p, x)``; slopes are ±1 so it is always a rational function."""
    curve.check_point(p)
    if curve.is_infinite_point(p):
        raise EvalAtInfinitePoint("distance to an infinite point is not finite")
    sub = refine(curve, [p])
    fine = sub.fine
    d = vertex_distances(fine, sub.to_fine(p).vertex)
    values: dict[str, Fraction] = {}
    knots: dict[str, list[Knot]] = {}
    tails: dict[str, Fraction] = {}
    for w in fine.finite_vertices():
        q = sub.vertex_image[w]
        if isinstance(q, VertexPoint):
            values[q.vertex] = d[w]
        else:
            knots.setdefault(q.edge, []).append((q.offset, d[w]))
    for r in fine.edges.values():
        seg = sub.edge_image[r.id]
        if r.infinite:
            tails[seg.edge] = Fraction(1)
            continue
        peak = (d[r.head] + r.length - d[r.tail]) / 2
        if 0 < peak < r.length:
            knots.setdefault(seg.edge, []).append((seg.to_coarse(peak), d[r.tail] + peak))
    return PLFunction(curve, values, knots, tails)


def ramp(curve: Curve, edge: str, stop: object, slope: int = 1, start: object = 0) -> PLFunction:
    """Along leaf ``edge``: 0 up to ``start``, slope ``slope`` until ``stop``, then constant; 0 elsewhere."""
    e = curve.edges[edge]
    if not e.infinite:
        raise ValueError("ramps are defined on leaves")
    start, stop = to_rational(start), to_rational(stop)
    if not 0 <= start < stop:
        raise ValueError("need 0 <= start < stop")
    knots = [(start, Fraction(0))] if start > 0 else []
    knots.append((stop, slope * (stop - start)))
    return PLFunction(curve, {}, {edge: knots}, {edge: 0})


# -- evaluation and orders ----------------------------------------------------

def evaluate(f: PLFunction, p: Point) -> Fraction:
    f.curve.check_point(p)
    if isinstance(p, VertexPoint):
        if f.curve.vertices[p.vertex].infinite:
            raise EvalAtInfinitePoint(f"{p.vertex!r} is an infinite point; functions live on X minus those")
        return f.values[p.vertex]
    return f._value_on(p.edge, p.offset)


def ord_at(f: PLFunction, p: Point) -> Fraction:
    """Multiplicity-weighted sum of the outgoing slopes of ``f`` at ``p``.

    At an infinite point the chart runs from the point inwards, so the order
    is ``-m`` times the stored leaf slope.
    """
    curve = f.curve
    curve.check_point(p)
    if isinstance(p, EdgePoint):
        pts = f._bp[p.edge]
        i = bisect_left(pts, (p.offset,))
        if i == len(pts) or pts[i][0] != p.offset:
            return Fraction(0)
        before = _slope(pts[i - 1], pts[i])
        after = _slope(pts[i], pts[i + 1]) if i + 1 < len(pts) else f.tails[p.edge]
        return curve.edges[p.edge].multiplicity * (after - before)
    v = curve.vertices[p.vertex]
    if v.infinite:
        e = curve.leaf_of(v.id)
        return -e.multiplicity * f.tails[e.id]
    total = Fraction(0)
    for eid, end in curve.incident(v.id):
        e = curve.edges[eid]
        s = f.slopes(eid)
        total += e.multiplicity * (s[0] if end == 0 else -s[-1])
    return total


def orders(f: PLFunction) -> dict[Point, Fraction]:
    """All nonzero orders of ``f``; the candidates are the vertices and knots."""
    out = {}
    for p in list(f.curve.points()) + f.breakpoints():
        k = ord_at(f, p)
        if k:
            out[p] = k
    return out


def div(f: PLFunction) -> "Divisor":
    from .divisor import Divisor

    terms = orders(f)
    for p, k in terms.items():
        if k.denominator != 1:
            raise NonIntegerSlope(f"order {k} at {p!r} is not an integer")
    return Divisor(f.curve, {p: int(k) for p, k in terms.items()})


# -- tropical arithmetic ------------------------------------------------------

def linear_combination(terms: Sequence[tuple[object, PLFunction]]) -> PLFunction:
    """Pointwise ``sum(c * f)``; the result is in the common mode of the inputs."""
    fs = [f for _, f in terms]
    curve = _same_base(fs)
    mode = _same_mode(fs)
    coeffs = [to_rational(c) for c, _ in terms]
    if mode == Z and any(c.denominator != 1 for c in coeffs):
        raise NonIntegerSlope("rational scaling requested in integer-slope mode")
    values = {v: sum((c * f.values[v] for c, f in zip(coeffs, fs)), Fraction(0)) for v in curve.finite_vertices()}
    knots = {}
    for eid in curve.edges:
        xs = sorted({x for f in fs for x, _ in f.knots[eid]})
        knots[eid] = [(x, sum((c * f._value_on(eid, x) for c, f in zip(coeffs, fs)), Fraction(0))) for x in xs]
    tails = {eid: sum((c * f.tails[eid] for c, f in zip(coeffs, fs)), Fraction(0)) for eid in fs[0].tails}
    return PLFunction(curve, values, knots, tails, mode)


def trop_mul(f: PLFunction, g: PLFunction) -> PLFunction:
    """Tropical product: pointwise classical sum."""
    return linear_combination([(1, f), (1, g)])


def trop_div(f: PLFunction, g: PLFunction) -> PLFunction:
    """Tropical quotient: pointwise classical difference."""
    return linear_combination([(1, f), (-1, g)])


def trop_scale(f: PLFunction, c: object) -> PLFunction:
    """Tropical power ``f^c``, i.e. ``c * f``; non-integral ``c`` needs ``Q`` mode."""
    return linear_combination([(c, f)])


def _max2(f: PLFunction, g: PLFunction) -> PLFunction:
    curve = f.curve
    values = {v: max(f.values[v], g.values[v]) for v in curve.finite_vertices()}
    knots: dict[str, list[Knot]] = {}
    tails: dict[str, Fraction] = {}
    for e in curve.edges.values():
        xs = sorted({x for h in (f, g) for x, _ in h.knots[e.id]})
        grid = [Fraction(0), *xs] + ([] if e.infinite else [e.length])
        diff = [f._value_on(e.id, x) - g._value_on(e.id, x) for x in grid]
        extra = []
        for (a, da), (b, db) in zip(zip(grid, diff), zip(grid[1:], diff[1:])):
            if da * db < 0:
                extra.append(a + (b - a) * da / (da - db))
        if e.infinite:
            ds = f.tails[e.id] - g.tails[e.id]
            if diff[-1] * ds < 0:
                extra.append(grid[-1] - diff[-1] / ds)
            tails[e.id] = f.tails[e.id] if ds >= 0 else g.tails[e.id]
        knots[e.id] = [(x, max(f._value_on(e.id, x), g._value_on(e.id, x))) for x in sorted(set(xs) | set(extra))]
    return PLFunction(curve, values, knots, tails, f.mode)


def trop_add(f: PLFunction, g: PLFunction) -> PLFunction:
    """Tropical sum: pointwise maximum, with crossing points solved exactly."""
    _same_base([f, g])
    _same_mode([f, g])
    return _max2(f, g)


def trop_sum(fs: Iterable[PLFunction]) -> PLFunction:
    """Tropical sum of several functions (pointwise maximum)."""
    fs = list(fs)
    _same_base(fs)
    _same_mode(fs)
    out = fs[0]
    for g in fs[1:]:
        out = _max2(out, g)
    return out


def pl_equal(f: PLFunction, g: PLFunction) -> bool:
    if f.curve != g.curve:
        raise BaseMismatch("functions live on different curves")
    return f._key() == g._key()


# -- group action -------------------------------------------------------------

def pullback(g: "Automorphism", f: PLFunction) -> PLFunction:
    """The translate ``g f = f ∘ g⁻¹``.

    Works on the automorphism's simplicial model: every piece of ``f`` over a
    fine edge ``r`` is transported to the image edge ``g(r)``.
    """
    if g.curve != f.curve:
        raise BaseMismatch("automorphism and function live on different curves")
    sub = g.model
    fine = sub.fine
    values: dict[str, Fraction] = {}
    knots: dict[str, list[Knot]] = {}
    tails: dict[str, Fraction] = {}
    for w in fine.finite_vertices():
        u = g.vertex_preimage[w]
        val = evaluate(f, sub.vertex_image[u])
        q = sub.vertex_image[w]
        if isinstance(q, VertexPoint):
            values[q.vertex] = val
        else:
            knots.setdefault(q.edge, []).append((q.offset, val))
    for r in fine.edges.values():
        r2, rev = g.edge_map[r.id]
        seg = sub.edge_image[r.id]
        seg2 = sub.edge_image[r2]
        for x, val in f.knots[seg.edge]:
            if seg.start < x < seg.end:
                y = seg.to_fine(x)
                if rev:
                    y = r.length - y
                knots.setdefault(seg2.edge, []).append((seg2.to_coarse(y), val))
        if r.infinite:
            tails[seg2.edge] = f.tails[seg.edge]
    return PLFunction(f.curve, values, knots, tails, f.mode)
