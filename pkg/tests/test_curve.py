from fractions import Fraction

import pytest
from hypothesis import given

from tropsym.curve import (
    Curve,
    Edge,
    EdgePoint,
    Vertex,
    VertexPoint,
    distance,
    minimal_model,
    refine,
    valence,
    validate_curve,
)
from tropsym.errors import (
    BadCircleMultiplicity,
    Disconnected,
    DuplicateId,
    FiniteLeaf,
    InfiniteInnerEdge,
    MultiplicityMismatchAt2Valent,
    UnknownPoint,
)
from tropsym.fixtures import CIRC12, SEG, STAR3, THETA112, circle, star
from tropsym.rational import INF

from strategies import positive_rationals, rng_of, seeds
from tropsym import generators as gen

F = Fraction


def raw(vertices, edges):
    return {
        "vertices": [{"id": v, "infinite": inf} for v, inf in vertices],
        "edges": [{"id": e, "ends": [a, b], "length": ln, "multiplicity": m} for e, a, b, ln, m in edges],
    }


def test_star3_valid():
    c = validate_curve(raw([("O", False), ("I1", True), ("I2", True), ("I3", True)],
                           [(f"l{k}", "O", f"I{k}", "inf", 1) for k in (1, 2, 3)]))
    assert c == STAR3


def test_single_vertex_curve_is_valid():
    c = Curve([Vertex("P")], [])
    assert list(c.vertices) == ["P"] and not c.edges


def test_finite_leaf_rejected():
    with pytest.raises(FiniteLeaf):
        validate_curve(raw([("a", False), ("b", False)], [("e", "a", "b", "1", 1)]))


def test_finite_edge_to_infinite_point_rejected():
    with pytest.raises(FiniteLeaf):
        validate_curve(raw([("O", False), ("I", True), ("J", True)],
                           [("e", "O", "I", "1", 1), ("f", "O", "J", "inf", 1)]))


def test_double_infinite_edge_rejected():
    with pytest.raises(InfiniteInnerEdge):
        validate_curve(raw([("I", True), ("J", True)], [("e", "I", "J", "inf", 1)]))


def test_infinite_inner_edge_rejected():
    verts = [("u", False), ("v", False), ("I", True), ("J", True), ("K", True), ("L", True)]
    edges = [("e", "u", "v", "inf", 1), ("a", "u", "I", "inf", 1), ("b", "u", "J", "inf", 1),
             ("c", "v", "K", "inf", 1), ("d", "v", "L", "inf", 1)]
    with pytest.raises(InfiniteInnerEdge):
        validate_curve(raw(verts, edges))


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        validate_curve(raw([("u", False), ("v", False)], [("a", "u", "u", "1", 1), ("b", "v", "v", "1", 1)]))


def test_duplicate_id_rejected():
    with pytest.raises(DuplicateId):
        validate_curve(raw([("u", False), ("u", False)], []))


def test_multiplicity_mismatch_at_two_valent_vertex():
    verts = [("M", False), ("I1", True), ("I2", True)]
    with pytest.raises(MultiplicityMismatchAt2Valent):
        validate_curve(raw(verts, [("l1", "M", "I1", "inf", 1), ("l2", "M", "I2", "inf", 2)]))


def test_circle_multiplicity_must_be_uniform():
    with pytest.raises(BadCircleMultiplicity):
        validate_curve(raw([("A", False), ("B", False)], [("e1", "A", "B", "1", 1), ("e2", "A", "B", "2", 3)]))


def test_canonical_orientation():
    c = validate_curve(raw([("z", False), ("a", False)], [("e", "z", "a", "1", 1), ("f", "a", "z", "2", 1)]))
    assert c.edges["e"].tail == "a" and c.edges["f"].tail == "a"
    assert STAR3.edges["l1"].tail == "O"


@pytest.mark.parametrize(
    "point,expected",
    [(VertexPoint("O"), 3), (EdgePoint("l1", F(5)), 2), (VertexPoint("I1"), 1)],
)
def test_valence(point, expected):
    assert valence(STAR3, point) == expected


def test_valence_unknown_point():
    with pytest.raises(UnknownPoint):
        valence(STAR3, VertexPoint("Z"))


def test_refine_star_leaf():
    sub = refine(STAR3, [EdgePoint("l1", F(1))])
    assert len(sub.fine.vertices) == 5
    v = sub.to_fine(EdgePoint("l1", F(1)))
    assert valence(sub.fine, v) == 2
    assert sub.fine.edges["l1.0"].length == 1 and sub.fine.edges["l1.1"].length == INF
    assert minimal_model(sub.fine).coarse == STAR3


def test_refine_empty_is_identity():
    for c in (STAR3, THETA112, CIRC12, SEG):
        assert refine(c, []).fine == c


def test_refine_circle_long_arc_midpoint():
    sub = refine(CIRC12, [EdgePoint("e2", F(1))])
    assert sorted(e.length for e in sub.fine.edges.values()) == [1, 1, 1]
    assert distance(sub.fine, VertexPoint("A"), VertexPoint("B")) == 1


def test_minimal_model_circle_three_vertices():
    c = Curve([Vertex("x"), Vertex("y"), Vertex("z")],
              [Edge("p", "x", "y", F(1)), Edge("q", "y", "z", F(1, 2)), Edge("r", "z", "x", F(3, 2))])
    m = minimal_model(c).coarse
    assert list(m.vertices) == ["x"]
    (loop,) = m.edges.values()
    assert loop.is_loop and loop.length == 3


def test_minimal_model_theta_unchanged():
    assert minimal_model(THETA112).coarse == THETA112


def test_minimal_model_point_translation_roundtrip():
    sub = refine(THETA112, [EdgePoint("c", F(1, 2)), EdgePoint("a", F(1, 3))])
    mm = minimal_model(sub.fine)
    assert mm.coarse == THETA112
    for v in sub.fine.vertices:
        assert mm.to_coarse(VertexPoint(v)) == sub.to_coarse(VertexPoint(v))


def test_distance_examples():
    assert distance(STAR3, VertexPoint("O"), EdgePoint("l1", F(2))) == 2
    assert distance(CIRC12, VertexPoint("A"), VertexPoint("B")) == 1
    assert distance(STAR3, VertexPoint("I1"), VertexPoint("O")) == INF


def test_distance_on_circle_wraps():
    # e1 has length 1, e2 length 2; the far side of e2 is closer via B
    assert distance(CIRC12, EdgePoint("e1", F(1, 2)), EdgePoint("e2", F(3, 2))) == 1
    assert distance(CIRC12, EdgePoint("e2", F(1, 2)), EdgePoint("e2", F(3, 2))) == 1


@given(seeds)
def test_distance_is_a_metric(seed):
    r = rng_of(seed)
    for c in (STAR3, THETA112, CIRC12, SEG):
        pts = [gen.point(r, c) for _ in range(3)]
        p, q, s = pts
        assert distance(c, p, q) == distance(c, q, p)
        assert distance(c, p, s) <= distance(c, p, q) + distance(c, q, s)
        assert (distance(c, p, q) == 0) == (p == q)


@given(positive_rationals, positive_rationals)
def test_refine_preserves_distances(a, b):
    c = circle(a, b)
    p = EdgePoint("e2", b / 3)
    sub = refine(c, [p])
    assert distance(sub.fine, VertexPoint("A"), sub.to_fine(p)) == min(b / 3, a + 2 * b / 3)


@given(seeds)
def test_refine_then_minimal_model_recovers_curve(seed):
    r = rng_of(seed)
    for c in (STAR3, THETA112, star(4)):
        pts = [gen.point(r, c) for _ in range(3)]
        assert minimal_model(refine(c, pts).fine).coarse == c


def test_valence_invariant_under_refinement():
    sub = refine(STAR3, [EdgePoint("l2", F(1, 2))])
    for v in STAR3.vertices:
        assert valence(sub.fine, sub.to_fine(VertexPoint(v))) == valence(STAR3, VertexPoint(v))


def test_non_two_valent_points_are_model_vertices():
    for c in (STAR3, THETA112, SEG):
        special = {v for v in c.vertices if valence(c, VertexPoint(v)) != 2}
        assert special <= set(c.vertices)
