"""Automorphisms of tropical curves and finite groups of them.

An automorphism is stored simplicially: a refinement of the base curve on
which it maps vertices to vertices and edges to edges (with an orientation
flag), preserving lengths and multiplicities.  Every isometry of interest,
circle rotations included, becomes simplicial after a suitable refinement.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .curve import Curve, EdgePoint, Point, Subdivision, VertexPoint, minimal_model, point_key, refine
from .errors import BaseMismatch, InfiniteAutGroup, MissingIdentity, NotAutomorphism, NotClosed

PointMap = Callable[[Point], Point]

#: Refuses to close a point set under maps once it grows beyond this size;
#: only elements of infinite order get there.
ORBIT_LIMIT = 20000


class Automorphism:
    """A length- and multiplicity-preserving self-map, simplicial on ``model.fine``."""

    __slots__ = ("model", "vertex_map", "edge_map", "vertex_preimage", "_key")

    def __init__(
        self,
        model: Subdivision,
        vertex_map: Mapping[str, str],
        edge_map: Mapping[str, tuple[str, bool]],
    ) -> None:
        fine = model.fine
        if set(vertex_map) != set(fine.vertices) or set(vertex_map.values()) != set(fine.vertices):
            raise NotAutomorphism("vertex map is not a bijection on the model vertices")
        if set(edge_map) != set(fine.edges) or {t for t, _ in edge_map.values()} != set(fine.edges):
            raise NotAutomorphism("edge map is not a bijection on the model edges")
        for v, w in vertex_map.items():
            if fine.vertices[v].infinite != fine.vertices[w].infinite:
                raise NotAutomorphism(f"vertex {v!r} and its image {w!r} differ in kind")
        for eid, (tid, rev) in edge_map.items():
            e, t = fine.edges[eid], fine.edges[tid]
            if e.length != t.length:
                raise NotAutomorphism(f"edge {eid!r} -> {tid!r} does not preserve length")
            if e.multiplicity != t.multiplicity:
                raise NotAutomorphism(f"edge {eid!r} -> {tid!r} does not preserve multiplicity")
            if rev and e.infinite:
                raise NotAutomorphism(f"leaf {eid!r} cannot be reversed")
            ends = (t.head, t.tail) if rev else (t.tail, t.head)
            if (vertex_map[e.tail], vertex_map[e.head]) != ends:
                raise NotAutomorphism(f"edge {eid!r} -> {tid!r} does not respect incidence")
        self.model = model
        self.vertex_map = {v: vertex_map[v] for v in fine.vertices}
        self.edge_map = {e: (edge_map[e][0], bool(edge_map[e][1])) for e in fine.edges}
        self.vertex_preimage = {w: v for v, w in self.vertex_map.items()}
        self._key = (
            tuple(self.vertex_map.items()),
            tuple((e, t, r) for e, (t, r) in self.edge_map.items()),
        )

    @property
    def curve(self) -> Curve:
        return self.model.coarse

    def apply(self, p: Point) -> Point:
        """Image of a point of the base curve."""
        q = self.model.to_fine(p)
        if isinstance(q, VertexPoint):
            return self.model.to_coarse(VertexPoint(self.vertex_map[q.vertex]))
        tid, rev = self.edge_map[q.edge]
        y = self.model.fine.edges[q.edge].length - q.offset if rev else q.offset
        return self.model.to_coarse(EdgePoint(tid, y))

    __call__ = apply

    def inverse(self) -> Automorphism:
        return Automorphism(
            self.model,
            self.vertex_preimage,
            {t: (e, r) for e, (t, r) in self.edge_map.items()},
        )

    def is_identity(self) -> bool:
        return all(v == w for v, w in self.vertex_map.items()) and all(
            e == t and not r for e, (t, r) in self.edge_map.items()
        )

    def key(self) -> tuple:
        """Sort key, meaningful between automorphisms on the same model."""
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        if self.curve != other.curve:
            return False
        if self.model.fine == other.model.fine:
            return self._key == other._key
        probe = refine(self.curve, set(self.model.fine_points()) | set(other.model.fine_points()))
        for p in _probe_points(probe):
            if self.apply(p) != other.apply(p):
                return False
        return True

    def __hash__(self) -> int:
        return hash(self.curve)

    def __repr__(self) -> str:
        moved = {v: w for v, w in self.vertex_map.items() if v != w}
        return f"Automorphism(moves={moved})"


def _probe_points(sub: Subdivision) -> list[Point]:
    """Vertices plus one off-centre interior point per edge of ``sub.fine``, as base points."""
    out = sub.fine_points()
    for r in sub.fine.edges.values():
        y = Fraction(1) if r.infinite else r.length / 3
        out.append(sub.to_coarse(EdgePoint(r.id, y)))
    return out


def identity(curve: Curve) -> Automorphism:
    model = refine(curve, [])
    return Automorphism(
        model,
        {v: v for v in curve.vertices},
        {e: (e, False) for e in curve.edges},
    )


def on_model(model: Subdivision, fn: PointMap) -> Automorphism:
    """Represent the point map ``fn`` simplicially on ``model``.

    ``model.fine`` must have a vertex set mapped onto itself by ``fn``;
    :class:`NotAutomorphism` is raised otherwise or if ``fn`` is no isometry.
    """
    fine = model.fine
    vm = {}
    for v in fine.vertices:
        q = model.to_fine(fn(model.vertex_image[v]))
        if not isinstance(q, VertexPoint):
            raise NotAutomorphism(f"model vertex {v!r} is not mapped to a model vertex")
        vm[v] = q.vertex
    em = {}
    for r in fine.edges.values():
        y = Fraction(1) if r.infinite else r.length / 3
        q = model.to_fine(fn(model.to_coarse(EdgePoint(r.id, y))))
        if not isinstance(q, EdgePoint):
            raise NotAutomorphism(f"interior of model edge {r.id!r} is mapped to a vertex")
        t = fine.edges[q.edge]
        if q.offset == y:
            em[r.id] = (t.id, False)
        elif not t.infinite and q.offset == t.length - y:
            em[r.id] = (t.id, True)
        else:
            raise NotAutomorphism(f"model edge {r.id!r} is not mapped isometrically")
    return Automorphism(model, vm, em)


def from_point_map(curve: Curve, fn: PointMap, points: Iterable[Point]) -> Automorphism:
    """Automorphism agreeing with ``fn``, simplicial on ``refine(curve, points)``."""
    return on_model(refine(curve, points), fn)


def invariant_closure(points: Iterable[Point], maps: Sequence[PointMap], limit: int = ORBIT_LIMIT) -> set[Point]:
    seen = set(points)
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for m in maps:
                q = m(p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        if len(seen) > limit:
            raise NotClosed("orbit of the refinement points does not close up; the maps generate an infinite group")
        frontier = nxt
    return seen


def compose(g: Automorphism, h: Automorphism) -> Automorphism:
    """``g ∘ h`` (apply ``h`` first)."""
    if g.curve != h.curve:
        raise BaseMismatch("automorphisms live on different curves")
    g_inv, h_inv = g.inverse(), h.inverse()

    def gh(p: Point) -> Point:
        return g.apply(h.apply(p))

    def gh_inv(p: Point) -> Point:
        return h_inv.apply(g_inv.apply(p))

    seeds = set(h.model.fine_points()) | {h_inv.apply(p) for p in g.model.fine_points()}
    return from_point_map(g.curve, gh, invariant_closure(seeds, [gh, gh_inv]))


def act_on_point(g: Automorphism, p: Point) -> Point:
    return g.apply(p)


# -- groups -------------------------------------------------------------------

class AutGroup:
    """A finite group of automorphisms on one common invariant model.

    ``elements[0]`` is the identity; the rest are sorted by their maps.
    ``table[i][j]`` is the index of ``elements[i] ∘ elements[j]``.
    """

    def __init__(self, curve: Curve, model: Subdivision, elements: Sequence[Automorphism], table) -> None:
        self.curve = curve
        self.model = model
        self.elements = tuple(elements)
        self.table = tuple(tuple(row) for row in table)
        self.inverses = tuple(row.index(0) for row in self.table)
        self._index = {g.key(): i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> Automorphism:
        return self.elements[i]

    def index(self, g: Automorphism) -> int:
        if g.model.fine == self.model.fine and g.key() in self._index:
            return self._index[g.key()]
        for i, h in enumerate(self.elements):
            if h == g:
                return i
        raise KeyError("automorphism is not in the group")

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def element_order(self, i: int) -> int:
        k, n = i, 1
        while k != 0:
            k = self.table[i][k]
            n += 1
        return n

    def stabilizer(self, p: Point) -> list[int]:
        return [i for i, g in enumerate(self.elements) if g.apply(p) == p]

    def orbit(self, p: Point) -> list[Point]:
        return sorted({g.apply(p) for g in self.elements}, key=point_key)

    def __repr__(self) -> str:
        return f"AutGroup(order={self.order})"


def _compose_on_model(g: Automorphism, h: Automorphism) -> tuple:
    vm = tuple((v, g.vertex_map[w]) for v, w in h.vertex_map.items())
    em = []
    for e, (t, r) in h.edge_map.items():
        t2, r2 = g.edge_map[t]
        em.append((e, t2, r != r2))
    return (vm, tuple(em))


def _make_group(curve: Curve, model: Subdivision, elements: Iterable[Automorphism]) -> AutGroup:
    unique: dict[tuple, Automorphism] = {}
    for g in elements:
        unique.setdefault(g.key(), g)
    ident = [g for g in unique.values() if g.is_identity()]
    if not ident:
        raise MissingIdentity("the element list does not contain the identity")
    rest = sorted((g for g in unique.values() if not g.is_identity()), key=Automorphism.key)
    ordered = ident + rest
    index = {g.key(): i for i, g in enumerate(ordered)}
    table = []
    for i, g in enumerate(ordered):
        row = []
        for j, h in enumerate(ordered):
            k = index.get(_compose_on_model(g, h))
            if k is None:
                raise NotClosed(f"product of elements {i} and {j} is not in the list", left=i, right=j)
            row.append(k)
        table.append(row)
    for i, row in enumerate(table):
        if 0 not in row:
            raise NotClosed(f"element {i} has no inverse in the list", element=i)
    return AutGroup(curve, model, ordered, table)


def validate_group(curve: Curve, elements: Sequence[Automorphism]) -> AutGroup:
    """Check that ``elements`` form a finite group and rebase them onto one model."""
    for g in elements:
        if g.curve != curve:
            raise BaseMismatch("automorphism lives on a different curve")
    if not elements:
        raise MissingIdentity("empty element list")
    seeds = set(curve.points())
    for g in elements:
        seeds |= set(g.model.fine_points())
    points = invariant_closure(seeds, [g.apply for g in elements])
    model = refine(curve, points)
    return _make_group(curve, model, [on_model(model, g.apply) for g in elements])


def _graph_automorphisms(m: Curve) -> list[tuple[dict, dict]]:
    """All length/multiplicity preserving automorphisms of the model graph ``m``.

    Backtracks over edges (breadth-first order so endpoints get pinned
    early), trying every admissible target edge and, for finite edges, both
    orientations.
    """
    valence = {v: len(m.incident(v)) for v in m.vertices}
    order: list[str] = []
    seen_v = set()
    for root in m.vertices:
        if root in seen_v:
            continue
        queue = [root]
        seen_v.add(root)
        while queue:
            v = queue.pop(0)
            for eid, end in m.incident(v):
                if eid not in order:
                    order.append(eid)
                e = m.edges[eid]
                w = e.head if end == 0 else e.tail
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    edges = [m.edges[e] for e in order]

    def signature(e):
        return (e.length, e.multiplicity, e.is_loop, sorted((valence[e.tail], valence[e.head])))

    candidates = {e.id: [t for t in m.edges.values() if signature(t) == signature(e)] for e in edges}
    vm: dict[str, str] = {}
    vinv: dict[str, str] = {}
    em: dict[str, tuple[str, bool]] = {}
    used: set[str] = set()
    found: list[tuple[dict, dict]] = []

    def rec(k: int) -> None:
        if k == len(edges):
            found.append((dict(vm), dict(em)))
            return
        e = edges[k]
        for t in candidates[e.id]:
            if t.id in used:
                continue
            for rev in (False,) if e.infinite else (False, True):
                pairs = [(e.tail, t.head if rev else t.tail), (e.head, t.tail if rev else t.head)]
                pinned = []
                ok = True
                for a, b in pairs:
                    if a in vm:
                        ok = vm[a] == b
                    elif b in vinv or valence[a] != valence[b] or m.vertices[a].infinite != m.vertices[b].infinite:
                        ok = False
                    else:
                        vm[a] = b
                        vinv[b] = a
                        pinned.append(a)
                    if not ok:
                        break
                if ok:
                    used.add(t.id)
                    em[e.id] = (t.id, rev)
                    rec(k + 1)
                    del em[e.id]
                    used.discard(t.id)
                for a in pinned:
                    del vinv[vm.pop(a)]

    rec(0)
    return found


def _graph_map(m: Curve, vm: Mapping[str, str], em: Mapping[str, tuple[str, bool]]) -> PointMap:
    def fn(p: Point) -> Point:
        if isinstance(p, VertexPoint):
            return VertexPoint(vm[p.vertex])
        t, rev = em[p.edge]
        return EdgePoint(t, m.edges[t].length - p.offset if rev else p.offset)

    return fn


def enumerate_aut(curve: Curve) -> AutGroup:
    """The full automorphism group of a curve with finitely many automorphisms.

    Works on the minimal model, where every automorphism permutes leaves and
    maps inner edges isometrically onto inner edges in one of two ways, then
    transports the result back to ``curve`` on a common invariant refinement.
    """
    if not curve.edges:
        return _make_group(curve, refine(curve, []), [identity(curve)])
    if curve.is_circle():
        raise InfiniteAutGroup("the curve is a circle; its rotations form an infinite group")
    if curve.is_line():
        raise InfiniteAutGroup("the minimal graph is a single edge; its translations form an infinite group")
    sub = minimal_model(curve)
    m = sub.coarse
    coarse_maps = [_graph_map(m, vm, em) for vm, em in _graph_automorphisms(m)]
    seeds = sub.fine_points()
    orbit = {fn(p) for fn in coarse_maps for p in seeds}
    model = refine(curve, [sub.to_fine(p) for p in orbit])

    def lift(fn: PointMap) -> PointMap:
        return lambda p: sub.to_fine(fn(sub.to_coarse(p)))

    return _make_group(curve, model, [on_model(model, lift(fn)) for fn in coarse_maps])
