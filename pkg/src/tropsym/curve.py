"""Abstract tropical curves presented as validated metric-graph models.

A curve is a finite connected graph whose inner edges carry positive rational
lengths and whose leaves are infinite.  Points of the curve are either model
vertices (:class:`VertexPoint`) or interior positions on an edge
(:class:`EdgePoint`).  Offsets on an edge are measured from its *tail*:

* finite non-loop edges: the endpoint with the lexicographically smaller id;
* infinite edges (leaves): the finite endpoint;
* loops: the vertex, in the direction fixed by the declaration.

Everything iterates in lexicographic id order so results are reproducible.
"""

from __future__ import annotations

import heapq
import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    BadCircleMultiplicity,
    BadInfinitePoint,
    BadLength,
    BadMultiplicity,
    Disconnected,
    DuplicateId,
    EmptyCurve,
    FiniteLeaf,
    InfiniteInnerEdge,
    MultiplicityMismatchAt2Valent,
    UnknownPoint,
    UnknownVertex,
)
from .rational import INF, Length, fmt_offset

__all__ = [
    "Vertex",
    "Edge",
    "VertexPoint",
    "EdgePoint",
    "Point",
    "point_key",
    "Curve",
    "Segment",
    "Subdivision",
    "validate_curve",
    "valence",
    "refine",
    "minimal_model",
    "distance",
    "vertex_distances",
]


@dataclass(frozen=True)
class Vertex:
    id: str
    infinite: bool = False


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    length: Length
    multiplicity: int = 1

    @property
    def infinite(self) -> bool:
        return self.length == INF

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class VertexPoint:
    vertex: str

    def key(self) -> tuple:
        return (0, self.vertex, Fraction(0))

    def __repr__(self) -> str:
        return f"<{self.vertex}>"


@dataclass(frozen=True)
class EdgePoint:
    edge: str
    offset: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", Fraction(self.offset))

    def key(self) -> tuple:
        return (1, self.edge, self.offset)

    def __repr__(self) -> str:
        return f"<{self.edge}@{self.offset}>"


Point = Union[VertexPoint, EdgePoint]


def point_key(p: Point) -> tuple:
    """Canonical sort key: vertices by id first, then edge points by (edge, offset)."""
    return p.key()


class Curve:
    """An immutable, validated model of an abstract tropical curve.

    Construction validates every invariant and re-orients edges canonically;
    use :func:`validate_curve` to build one from a raw JSON-like mapping.
    """

    __slots__ = ("vertices", "edges", "_incident", "_hash")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge]) -> None:
        vertices = list(vertices)
        edges = list(edges)
        vmap: dict[str, Vertex] = {}
        for v in vertices:
            if v.id in vmap:
                raise DuplicateId(f"duplicate vertex id {v.id!r}", id=v.id)
            vmap[v.id] = v
        emap: dict[str, Edge] = {}
        for e in edges:
            if e.id in emap:
                raise DuplicateId(f"duplicate edge id {e.id!r}", id=e.id)
            for end in (e.tail, e.head):
                if end not in vmap:
                    raise UnknownVertex(f"edge {e.id!r} references unknown vertex {end!r}", edge=e.id)
            if not (e.length == INF or (isinstance(e.length, Fraction) and e.length > 0)):
                raise BadLength(f"edge {e.id!r} must have positive rational or infinite length", edge=e.id)
            if isinstance(e.multiplicity, bool) or not isinstance(e.multiplicity, int) or e.multiplicity < 1:
                raise BadMultiplicity(f"edge {e.id!r} multiplicity must be a positive integer", edge=e.id)
            emap[e.id] = _orient(e, vmap)
        if not vmap:
            raise EmptyCurve("a curve needs at least one vertex")

        self.vertices: Mapping[str, Vertex] = {k: vmap[k] for k in sorted(vmap)}
        self.edges: Mapping[str, Edge] = {k: emap[k] for k in sorted(emap)}
        incident: dict[str, list[tuple[str, int]]] = {v: [] for v in self.vertices}
        for e in self.edges.values():
            incident[e.tail].append((e.id, 0))
            incident[e.head].append((e.id, 1))
        self._incident = incident
        self._hash = None
        self._validate()

    # -- structure -------------------------------------------------------

    def _validate(self) -> None:
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for eid, end in self._incident[v]:
                e = self.edges[eid]
                w = e.head if end == 0 else e.tail
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            missing = sorted(set(self.vertices) - seen)
            raise Disconnected(f"curve is disconnected; unreachable vertices {missing}", vertices=missing)

        for e in self.edges.values():
            t_inf = self.vertices[e.tail].infinite
            h_inf = self.vertices[e.head].infinite
            if e.infinite:
                if t_inf and h_inf:
                    raise InfiniteInnerEdge(
                        f"edge {e.id!r} joins two infinite points; subdivide it with a finite 2-valent vertex",
                        edge=e.id,
                    )
                if not h_inf:
                    raise InfiniteInnerEdge(f"infinite edge {e.id!r} must end at an infinite point", edge=e.id)
            elif t_inf or h_inf:
                raise FiniteLeaf(f"leaf {e.id!r} ends at an infinite point but has finite length", edge=e.id)

        for v in self.vertices.values():
            n = len(self._incident[v.id])
            if v.infinite and n != 1:
                raise BadInfinitePoint(f"infinite point {v.id!r} must be 1-valent", vertex=v.id)
            if not v.infinite and n == 1:
                raise FiniteLeaf(f"1-valent vertex {v.id!r} must be an infinite point on an infinite leaf", vertex=v.id)

        if self.is_circle():
            mults = {e.multiplicity for e in self.edges.values()}
            if len(mults) > 1:
                raise BadCircleMultiplicity("all edges of a circle must carry the same multiplicity")
            return
        for v in self.vertices.values():
            inc = self._incident[v.id]
            if not v.infinite and len(inc) == 2 and inc[0][0] != inc[1][0]:
                m0 = self.edges[inc[0][0]].multiplicity
                m1 = self.edges[inc[1][0]].multiplicity
                if m0 != m1:
                    raise MultiplicityMismatchAt2Valent(
                        f"2-valent vertex {v.id!r} joins edges of multiplicities {m0} and {m1}", vertex=v.id
                    )

    def incident(self, vertex: str) -> list[tuple[str, int]]:
        """Edge-ends at ``vertex`` as ``(edge id, end)``, end 0 = tail, 1 = head; loops appear twice."""
        return self._incident[vertex]

    def finite_vertices(self) -> list[str]:
        return [v for v, x in self.vertices.items() if not x.infinite]

    def infinite_vertices(self) -> list[str]:
        return [v for v, x in self.vertices.items() if x.infinite]

    @property
    def base_vertex(self) -> str:
        """The lexicographically smallest finite vertex, used to normalize functions."""
        return self.finite_vertices()[0]

    def is_circle(self) -> bool:
        return bool(self.edges) and all(
            not v.infinite and len(self._incident[v.id]) == 2 for v in self.vertices.values()
        )

    def is_line(self) -> bool:
        """True for a tropical projective line: a path joining exactly two infinite points."""
        if self.is_circle():
            return False
        if len(self.infinite_vertices()) != 2:
            return False
        return all(len(self._incident[v]) == 2 for v in self.finite_vertices())

    def leaf_of(self, vertex: str) -> Edge:
        """The infinite edge ending at infinite point ``vertex``."""
        (eid, _), = self._incident[vertex]
        return self.edges[eid]

    # -- points ----------------------------------------------------------

    def check_point(self, p: Point) -> Point:
        if isinstance(p, VertexPoint):
            if p.vertex not in self.vertices:
                raise UnknownPoint(f"unknown vertex {p.vertex!r}", point=repr(p))
            return p
        if isinstance(p, EdgePoint):
            e = self.edges.get(p.edge)
            if e is None:
                raise UnknownPoint(f"unknown edge {p.edge!r}", point=repr(p))
            if not 0 < p.offset < e.length:
                raise UnknownPoint(f"offset {p.offset} not strictly inside edge {p.edge!r}", point=repr(p))
            return p
        raise UnknownPoint(f"not a point: {p!r}")

    def point_on(self, edge: str, offset: Fraction) -> Point:
        """The point at ``offset`` along ``edge``, as a vertex when it is an endpoint."""
        e = self.edges.get(edge)
        if e is None:
            raise UnknownPoint(f"unknown edge {edge!r}")
        if offset == 0:
            return VertexPoint(e.tail)
        if offset == e.length:
            return VertexPoint(e.head)
        if not 0 < offset < e.length:
            raise UnknownPoint(f"offset {offset} outside edge {edge!r}")
        return EdgePoint(edge, Fraction(offset))

    def is_infinite_point(self, p: Point) -> bool:
        return isinstance(p, VertexPoint) and self.vertices[p.vertex].infinite

    def points(self) -> Iterator[Point]:
        """The model vertices as points."""
        for v in self.vertices:
            yield VertexPoint(v)

    # -- identity --------------------------------------------------------

    def _key(self) -> tuple:
        return (tuple(self.vertices.values()), tuple(self.edges.values()))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Curve):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"Curve({len(self.vertices)} vertices, {len(self.edges)} edges)"


def _orient(e: Edge, vmap: Mapping[str, Vertex]) -> Edge:
    if e.tail == e.head:
        return e
    if e.length == INF:
        if vmap[e.tail].infinite and not vmap[e.head].infinite:
            return Edge(e.id, e.head, e.tail, e.length, e.multiplicity)
        return e
    if e.head < e.tail:
        return Edge(e.id, e.head, e.tail, e.length, e.multiplicity)
    return e


def validate_curve(raw: Mapping) -> Curve:
    """Build a :class:`Curve` from the JSON description, validating every invariant."""
    from .io import curve_from_json

    return curve_from_json(raw)


def valence(curve: Curve, point: Point) -> int:
    curve.check_point(point)
    if isinstance(point, EdgePoint):
        return 2
    return len(curve.incident(point.vertex))


# -- subdivisions -------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """Where a fine edge sits inside a coarse edge.

    Fine offset ``y`` corresponds to coarse offset ``start + y``, or
    ``end - y`` when ``reversed``.
    """

    edge: str
    start: Fraction
    end: Length
    reversed: bool = False

    def to_coarse(self, y: Fraction) -> Fraction:
        return self.end - y if self.reversed else self.start + y

    def to_fine(self, x: Fraction) -> Fraction:
        return self.end - x if self.reversed else x - self.start


class Subdivision:
    """A fine model of a curve together with its coarser model.

    Produced by :func:`refine` (fine = refinement, coarse = input) and by
    :func:`minimal_model` (fine = input, coarse = minimal model).  Translates
    points in both directions.
    """

    def __init__(
        self,
        fine: Curve,
        coarse: Curve,
        vertex_image: Mapping[str, Point],
        edge_image: Mapping[str, Segment],
    ) -> None:
        self.fine = fine
        self.coarse = coarse
        self.vertex_image = dict(vertex_image)
        self.edge_image = dict(edge_image)
        self._vertex_preimage = {p: v for v, p in self.vertex_image.items()}
        by_edge: dict[str, list[tuple[Fraction, Length, str]]] = {e: [] for e in coarse.edges}
        for fid, seg in self.edge_image.items():
            by_edge[seg.edge].append((seg.start, seg.end, fid))
        self._segments = {e: sorted(v) for e, v in by_edge.items()}
        self._starts = {e: [s[0] for s in v] for e, v in self._segments.items()}

    def to_coarse(self, p: Point) -> Point:
        self.fine.check_point(p)
        if isinstance(p, VertexPoint):
            return self.vertex_image[p.vertex]
        seg = self.edge_image[p.edge]
        return self.coarse.point_on(seg.edge, seg.to_coarse(p.offset))

    def to_fine(self, p: Point) -> Point:
        self.coarse.check_point(p)
        hit = self._vertex_preimage.get(p)
        if hit is not None:
            return VertexPoint(hit)
        if isinstance(p, VertexPoint):
            raise UnknownPoint(f"coarse vertex {p.vertex!r} has no fine preimage")
        i = bisect_right(self._starts[p.edge], p.offset) - 1
        start, end, fid = self._segments[p.edge][i]
        return EdgePoint(fid, self.edge_image[fid].to_fine(p.offset))

    def fine_points(self) -> list[Point]:
        """The fine vertices, expressed as coarse points."""
        return [self.vertex_image[v] for v in self.fine.vertices]

    def segments(self, coarse_edge: str) -> list[tuple[Fraction, Length, str]]:
        """Fine edges covering ``coarse_edge`` as ``(start, end, fine id)`` in offset order."""
        return self._segments[coarse_edge]


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def refine(curve: Curve, points: Iterable[Point]) -> Subdivision:
    """Subdivide ``curve`` so that every given point becomes a vertex.

    New vertices are named ``<edge>@<offset>`` and the pieces of a cut edge
    ``<edge>.<k>`` (k counting from the tail).  A cut leaf becomes finite
    segments followed by a shorter infinite leaf.
    """
    cuts: dict[str, set[Fraction]] = {}
    for p in points:
        curve.check_point(p)
        if isinstance(p, EdgePoint):
            cuts.setdefault(p.edge, set()).add(p.offset)

    vids = set(curve.vertices)
    eids = set(curve.edges)
    new_vertices = list(curve.vertices.values())
    vertex_image: dict[str, Point] = {v: VertexPoint(v) for v in curve.vertices}
    pieces: list[tuple[Edge, str, Segment]] = []
    for e in curve.edges.values():
        offs = sorted(cuts.get(e.id, ()))
        if not offs:
            pieces.append((e, e.tail, Segment(e.id, Fraction(0), e.length)))
            continue
        ids = [e.tail]
        for t in offs:
            vid = _fresh(f"{e.id}@{fmt_offset(t)}", vids)
            new_vertices.append(Vertex(vid))
            vertex_image[vid] = EdgePoint(e.id, t)
            ids.append(vid)
        ids.append(e.head)
        bounds = [Fraction(0), *offs, e.length]
        for k in range(len(bounds) - 1):
            pid = _fresh(f"{e.id}.{k}", eids)
            piece = Edge(pid, ids[k], ids[k + 1], bounds[k + 1] - bounds[k], e.multiplicity)
            pieces.append((piece, ids[k], Segment(e.id, bounds[k], bounds[k + 1])))
    fine = Curve(new_vertices, [p[0] for p in pieces])
    edge_image = {}
    for piece, start_vertex, seg in pieces:
        oriented = fine.edges[piece.id]
        rev = not oriented.is_loop and oriented.tail != start_vertex
        edge_image[piece.id] = Segment(seg.edge, seg.start, seg.end, rev)
    return Subdivision(fine, curve, vertex_image, edge_image)


def _merged_name(ids: list[str]) -> str:
    """``e.0, e.1, ...`` (the pieces :func:`refine` cuts ``e`` into) merge back to ``e``."""
    bases = {i.rpartition(".")[0] for i in ids}
    if len(bases) == 1 and all(i.rpartition(".")[2].isdigit() for i in ids):
        base = bases.pop()
        if base:
            return base
    return min(ids)


def minimal_model(curve: Curve) -> Subdivision:
    """Suppress every suppressible 2-valent vertex.

    Returns a :class:`Subdivision` whose ``coarse`` side is the minimal model
    and whose ``fine`` side is the input.  A circle keeps its smallest vertex;
    a line between two infinite points keeps its smallest finite vertex, since
    a doubly infinite edge has no anchor for offsets.  Merged edges take the
    smallest id among their pieces, except that a chain made only of the
    refinement pieces ``e.0, e.1, ...`` of one edge gets ``e`` back.
    """
    if not curve.edges:
        return Subdivision(curve, curve, {v: VertexPoint(v) for v in curve.vertices}, {})
    if curve.is_circle():
        kept = {next(iter(curve.vertices))}
    else:
        kept = {v for v in curve.vertices if len(curve.incident(v)) != 2}
        if curve.is_line():
            kept.add(curve.finite_vertices()[0])

    used: set[str] = set()
    chains: list[tuple[str, str, list[tuple[str, bool]]]] = []
    for v in sorted(kept):
        if curve.vertices[v].infinite:
            continue
        for eid, end in curve.incident(v):
            if eid in used:
                continue
            steps: list[tuple[str, bool]] = []
            e = curve.edges[eid]
            while True:
                used.add(e.id)
                forward = end == 0
                steps.append((e.id, forward))
                y = e.head if forward else e.tail
                if y in kept:
                    break
                arrived = 1 if forward else 0
                (nid, end), = [x for x in curve.incident(y) if x != (e.id, arrived)]
                e = curve.edges[nid]
            chains.append((v, y, steps))

    coarse_edges = []
    names = [_merged_name([s for s, _ in steps]) for _, _, steps in chains]
    taken = set(curve.edges)
    for (v, y, steps), name in zip(chains, names):
        total: Length = sum((curve.edges[s].length for s, _ in steps), Fraction(0))
        mult = curve.edges[steps[0][0]].multiplicity
        if name in taken or names.count(name) > 1:
            name = min(s for s, _ in steps)
        coarse_edges.append(Edge(name, v, y, total, mult))
    coarse = Curve([curve.vertices[v] for v in kept], coarse_edges)

    vertex_image: dict[str, Point] = {v: VertexPoint(v) for v in kept}
    edge_image: dict[str, Segment] = {}
    for (v, y, steps), ce in zip(chains, coarse_edges):
        ce = coarse.edges[ce.id]
        coarse_forward = ce.is_loop or ce.tail == v
        pos = Fraction(0)
        for k, (fid, fine_forward) in enumerate(steps):
            nxt = pos + curve.edges[fid].length
            if coarse_forward:
                edge_image[fid] = Segment(ce.id, pos, nxt, not fine_forward)
            else:
                edge_image[fid] = Segment(ce.id, ce.length - nxt, ce.length - pos, fine_forward)
            if k < len(steps) - 1:
                fe = curve.edges[fid]
                w = fe.head if fine_forward else fe.tail
                vertex_image[w] = EdgePoint(ce.id, nxt if coarse_forward else ce.length - nxt)
            pos = nxt
    return Subdivision(curve, coarse, vertex_image, edge_image)


# -- metric -------------------------------------------------------------------

def vertex_distances(curve: Curve, source: str) -> dict[str, Length]:
    """Path-metric distances from finite vertex ``source`` to every vertex."""
    dist: dict[str, Length] = {v: INF for v in curve.vertices}
    dist[source] = Fraction(0)
    tie = itertools.count()
    heap = [(Fraction(0), next(tie), source)]
    while heap:
        d, _, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for eid, end in curve.incident(v):
            e = curve.edges[eid]
            if e.infinite:
                continue
            w = e.head if end == 0 else e.tail
            nd = d + e.length
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, next(tie), w))
    return dist


def distance(curve: Curve, p: Point, q: Point) -> Length:
    """Shortest-path distance; infinite whenever either point is an infinite point."""
    curve.check_point(p)
    curve.check_point(q)
    if curve.is_infinite_point(p) or curve.is_infinite_point(q):
        return INF
    sub = refine(curve, [p, q])
    a = sub.to_fine(p)
    b = sub.to_fine(q)
    return vertex_distances(sub.fine, a.vertex)[b.vertex]
