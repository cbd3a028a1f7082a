"""Principal divisors and linear equivalence.

A degree-0 divisor ``D`` is principal iff some rational function has
``div f = D``.  After refining so that ``supp D`` consists of vertices, any
such ``f`` is linear on every edge (an interior bend would show up in
``div f``), so ``f`` is determined by its vertex values, which satisfy the
multiplicity-weighted Laplacian system

    sum over edges vw at v of  m/len * (f(w) - f(v))  =  D(v) + (leaf mass at v)

with the constant ambiguity removed by ``f(v0) = 0``.  ``D`` is principal iff
the unique solution has an integer slope on every edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automorphism import AutGroup
from .curve import Curve, Point, VertexPoint, refine
from .divisor import Divisor, act_on_divisor, degree
from .errors import BaseMismatch, DegreeNonzero, NotInvariantDivisor, NotPrincipal
from .linalg import bareiss_solve
from .plfunction import PLFunction, constant, div, pullback


@dataclass(frozen=True)
class Certificate:
    """Why a divisor is not principal.

    The unique candidate function would have to rise with the non-integral
    ``slope`` (always positive) from ``start`` to ``end`` along base edge
    ``edge``.
    """

    edge: str
    slope: Fraction
    start: Point
    end: Point


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: PLFunction | None = None
    certificate: Certificate | None = None


def _oriented(edge: str, slope: Fraction, lo: Point, hi: Point) -> Certificate:
    if slope > 0:
        return Certificate(edge, slope, lo, hi)
    return Certificate(edge, -slope, hi, lo)


def solve_principal(curve: Curve, d: Divisor) -> PLFunction:
    """The function ``f`` with ``div f = d`` and ``f(v0) = 0``.

    ``v0`` is the smallest finite vertex.  Raises :class:`NotPrincipal`
    carrying a :class:`Certificate` when no such function exists.
    """
    if d.curve != curve:
        raise BaseMismatch("divisor lives on a different curve")
    if degree(d) != 0:
        raise DegreeNonzero(f"divisor has degree {degree(d)}, principal divisors have degree 0", degree=degree(d))
    sub = refine(curve, d.support())
    fine = sub.fine
    rhs = {v: Fraction(0) for v in fine.finite_vertices()}
    leaf_slope: dict[str, Fraction] = {}
    for p, a in d.terms.items():
        v = sub.to_fine(p).vertex
        if not fine.vertices[v].infinite:
            rhs[v] += a
            continue
        leaf = fine.leaf_of(v)
        seg = sub.edge_image[leaf.id]
        s = Fraction(-a, leaf.multiplicity)
        if s.denominator != 1:
            cert = _oriented(seg.edge, s, sub.vertex_image[leaf.tail], VertexPoint(v))
            raise NotPrincipal(
                f"mass {a} at infinite point {v!r} is not divisible by the leaf multiplicity {leaf.multiplicity}",
                cert,
            )
        leaf_slope[leaf.id] = s
        rhs[leaf.tail] += a

    v0 = curve.base_vertex
    unknowns = [v for v in fine.finite_vertices() if v != v0]
    index = {v: i for i, v in enumerate(unknowns)}
    n = len(unknowns)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for r in fine.edges.values():
        if r.infinite or r.is_loop:
            continue
        w = Fraction(r.multiplicity) / r.length
        for v, other in ((r.tail, r.head), (r.head, r.tail)):
            if v == v0:
                continue
            matrix[index[v]][index[v]] -= w
            if other != v0:
                matrix[index[v]][index[other]] += w
    potentials = dict(zip(unknowns, bareiss_solve(matrix, [rhs[v] for v in unknowns])))
    potentials[v0] = Fraction(0)

    for eid in curve.edges:
        for start, end, rid in sub.segments(eid):
            r = fine.edges[rid]
            if r.infinite:
                continue
            s = (potentials[r.head] - potentials[r.tail]) / r.length
            if s.denominator != 1:
                seg = sub.edge_image[rid]
                base_slope = -s if seg.reversed else s
                lo = curve.point_on(eid, start)
                hi = curve.point_on(eid, end)
                raise NotPrincipal(f"forced slope {s} on edge {eid!r} is not an integer", _oriented(eid, base_slope, lo, hi))

    values = {}
    knots: dict[str, list] = {}
    for v in fine.finite_vertices():
        q = sub.vertex_image[v]
        if isinstance(q, VertexPoint):
            values[q.vertex] = potentials[v]
        else:
            knots.setdefault(q.edge, []).append((q.offset, potentials[v]))
    tails = {}
    for r in fine.edges.values():
        if r.infinite:
            tails[sub.edge_image[r.id].edge] = leaf_slope.get(r.id, Fraction(0))
    f = PLFunction(curve, values, knots, tails)
    assert div(f) == d, "principal solver produced a function with the wrong divisor"
    return f


def is_principal(curve: Curve, d: Divisor) -> bool:
    try:
        solve_principal(curve, d)
    except NotPrincipal:
        return False
    return True


def is_equivalent(curve: Curve, d: Divisor, e: Divisor) -> Equivalence:
    """Decide ``d ~ e``; the witness satisfies ``d = e + div(witness)``."""
    if d.curve != curve or e.curve != curve:
        raise BaseMismatch("divisors live on a different curve")
    if degree(d) != degree(e):
        return Equivalence(False)
    try:
        f = solve_principal(curve, d - e)
    except NotPrincipal as exc:
        return Equivalence(False, certificate=exc.certificate)
    return Equivalence(True, witness=f)


def invariant_principal_witness(curve: Curve, group: AutGroup, e: Divisor) -> PLFunction:
    """A G-invariant ``f`` with ``div f = e`` for a G-invariant principal ``e``.

    The normalized solution already is invariant: ``g f - f`` has divisor 0,
    hence is a constant, and ``g -> g f - f`` is a homomorphism from a finite
    group to the reals, hence zero.  The invariance is checked, not assumed.
    """
    if group.curve != curve:
        raise BaseMismatch("group acts on a different curve")
    for i, g in enumerate(group.elements):
        if act_on_divisor(g, e) != e:
            raise NotInvariantDivisor(f"group element {i} moves the divisor", element=i)
    if e.is_zero():
        return constant(curve, 0)
    f = solve_principal(curve, e)
    for g in group.elements:
        assert pullback(g, f) == f, "normalized witness of an invariant divisor is not invariant"
    return f
