"""Standard small curves and groups used throughout tests and the self-test."""

from __future__ import annotations

from fractions import Fraction

from .automorphism import AutGroup, compose, enumerate_aut, from_point_map, identity, validate_group
from .curve import Curve, Edge, EdgePoint, Point, Vertex, VertexPoint
from .rational import INF, to_rational


def star(n: int, multiplicities: tuple[int, ...] | None = None) -> Curve:
    """Γ_n: ``n`` infinite leaves ``l1..ln`` from the centre ``O`` to ``I1..In``."""
    mults = multiplicities or (1,) * n
    vertices = [Vertex("O")] + [Vertex(f"I{k}", infinite=True) for k in range(1, n + 1)]
    edges = [Edge(f"l{k}", "O", f"I{k}", INF, mults[k - 1]) for k in range(1, n + 1)]
    return Curve(vertices, edges)


def theta(lengths=(1, 1, 2)) -> Curve:
    """Two vertices ``u``, ``v`` joined by parallel edges ``a``, ``b``, ``c``."""
    edges = [Edge(name, "u", "v", to_rational(x)) for name, x in zip("abc", lengths)]
    return Curve([Vertex("u"), Vertex("v")], edges)


def circle(a=1, b=2) -> Curve:
    """CIRC(a, b): vertices ``A``, ``B`` joined by arcs ``e1`` (length a) and ``e2`` (length b)."""
    return Curve(
        [Vertex("A"), Vertex("B")],
        [Edge("e1", "A", "B", to_rational(a)), Edge("e2", "A", "B", to_rational(b))],
    )


def segment() -> Curve:
    """SEG: a tropical line, leaves ``l1``, ``l2`` from the midpoint ``M``."""
    return Curve(
        [Vertex("M"), Vertex("I1", True), Vertex("I2", True)],
        [Edge("l1", "M", "I1", INF), Edge("l2", "M", "I2", INF)],
    )


STAR3 = star(3)
THETA112 = theta()
CIRC12 = circle()
SEG = segment()


def symmetric_group(n: int) -> AutGroup:
    return enumerate_aut(star(n))


def leaf_swap(curve: Curve, a: str, b: str):
    """Swap leaves ``a`` and ``b`` (both attached to the same vertex)."""

    def fn(p: Point) -> Point:
        if isinstance(p, EdgePoint) and p.edge in (a, b):
            return EdgePoint(b if p.edge == a else a, p.offset)
        if isinstance(p, VertexPoint):
            ea, eb = curve.edges[a], curve.edges[b]
            if p.vertex == ea.head:
                return VertexPoint(eb.head)
            if p.vertex == eb.head:
                return VertexPoint(ea.head)
        return p

    return from_point_map(curve, fn, [])


def seg_swap_group() -> AutGroup:
    """ℤ/2 acting on SEG by exchanging the two leaves."""
    return validate_group(SEG, [identity(SEG), leaf_swap(SEG, "l1", "l2")])


def theta_swap_group() -> AutGroup:
    """ℤ/2 acting on THETA112 by exchanging the two unit edges."""

    def fn(p: Point) -> Point:
        if isinstance(p, EdgePoint) and p.edge in ("a", "b"):
            return EdgePoint("b" if p.edge == "a" else "a", p.offset)
        return p

    return validate_group(THETA112, [identity(THETA112), from_point_map(THETA112, fn, [])])


def theta_flip_group() -> AutGroup:
    """ℤ/2 acting on THETA112 by exchanging ``u`` and ``v`` (reversing every edge)."""

    def fn(p: Point) -> Point:
        if isinstance(p, VertexPoint):
            return VertexPoint("v" if p.vertex == "u" else "u")
        return EdgePoint(p.edge, THETA112.edges[p.edge].length - p.offset)

    return validate_group(THETA112, [identity(THETA112), from_point_map(THETA112, fn, [])])


def circle_reflection_group(a=1, b=2) -> AutGroup:
    """ℤ/2 on CIRC(a, b): the reflection exchanging ``A`` and ``B`` (fixing both arc midpoints)."""
    curve = circle(a, b)

    def fn(p: Point) -> Point:
        if isinstance(p, VertexPoint):
            return VertexPoint("B" if p.vertex == "A" else "A")
        return EdgePoint(p.edge, curve.edges[p.edge].length - p.offset)

    return validate_group(curve, [identity(curve), from_point_map(curve, fn, [])])


def circle_rotation_group(n: int, a=1, b=2) -> AutGroup:
    """ℤ/n of rotations of CIRC(a, b) by multiples of (a + b) / n."""
    curve = circle(a, b)
    a, b = to_rational(a), to_rational(b)
    total = a + b
    step = total / n

    def coord(p: Point) -> Fraction:
        if isinstance(p, VertexPoint):
            return Fraction(0) if p.vertex == "A" else a
        return p.offset if p.edge == "e1" else total - p.offset

    def at(t: Fraction) -> Point:
        t %= total
        if t == 0:
            return VertexPoint("A")
        if t == a:
            return VertexPoint("B")
        if t < a:
            return EdgePoint("e1", t)
        return EdgePoint("e2", total - t)

    orbits = [at(base + step * k) for base in (Fraction(0), a) for k in range(n)]
    rot = from_point_map(curve, lambda p: at(coord(p) + step), orbits)
    elements = [identity(curve)]
    for _ in range(n - 1):
        elements.append(compose(rot, elements[-1]))
    return validate_group(curve, elements)
