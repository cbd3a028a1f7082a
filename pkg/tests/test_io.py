from fractions import Fraction

import pytest
from hypothesis import given

from tropsym import generators as gen
from tropsym import io
from tropsym.cohomology import coboundary_1D, coboundary_1F, coboundary_2F, coboundary_2R
from tropsym.curve import VertexPoint
from tropsym.errors import ParseError
from tropsym.fixtures import CIRC12, SEG, STAR3, THETA112, seg_swap_group, symmetric_group, theta_swap_group

from strategies import rng_of, seeds

CURVES = [STAR3, THETA112, CIRC12, SEG]


def roundtrip(obj):
    return io.loads(io.dumps(obj))


@pytest.mark.parametrize("curve", CURVES, ids=["star3", "theta", "circ", "seg"])
def test_curve_roundtrip(curve):
    assert io.curve_from_json(roundtrip(io.curve_to_json(curve))) == curve


@given(seeds)
def test_function_divisor_point_roundtrip(seed):
    r = rng_of(seed)
    for c in CURVES:
        f = gen.function(r, c)
        assert io.function_from_json(c, roundtrip(io.function_to_json(f))) == f
        q = gen.q_function(r, c, 2)
        assert io.function_from_json(c, roundtrip(io.function_to_json(q))) == q
        d = gen.divisor(r, c, infinite=True)
        assert io.divisor_from_json(c, roundtrip(io.divisor_to_json(d))) == d
        p = gen.point(r, c)
        assert io.point_from_json(c, roundtrip(io.point_to_json(p))) == p


def test_group_roundtrip():
    for g in (symmetric_group(3), seg_swap_group(), theta_swap_group()):
        back = io.group_from_json(g.curve, roundtrip(io.group_to_json(g)))
        assert back.order == g.order and back.table == g.table


def test_cocycle_roundtrip():
    r = gen.rng(3)
    g = seg_swap_group()
    for phi in (
        coboundary_1F(g, gen.function(r, SEG)),
        coboundary_1D(g, gen.divisor(r, SEG)),
        coboundary_2R(g, [Fraction(0), Fraction(5, 3)]),
        coboundary_2F(g, [gen.q_function(r, SEG, 1) for _ in range(2)]),
    ):
        back = io.cocycle_from_json(SEG, roundtrip(io.cocycle_to_json(phi)))
        assert type(back) is type(phi) and back.values == phi.values


def test_dumps_is_canonical():
    text = io.dumps({"b": 1, "a": [1, 2]})
    assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_rationals_written_as_strings():
    obj = io.point_to_json(STAR3.point_on("l1", Fraction(3, 2)))
    assert obj == {"edge": "l1", "offset": "3/2"}
    assert io.point_from_json(STAR3, {"vertex": "O"}) == VertexPoint("O")


@pytest.mark.parametrize(
    "text",
    ["{", '{"length": 1.5}', "[0.5]", '{"a": 1e3}'],
)
def test_bad_json_rejected(text):
    with pytest.raises(ParseError):
        io.loads(text)


@pytest.mark.parametrize(
    "obj",
    [
        {},
        {"vertices": "x", "edges": []},
        {"vertices": [{"id": "a", "infinite": "no"}], "edges": []},
        {"vertices": [{"id": "a"}], "edges": [{"id": "e", "ends": ["a"], "length": 1}]},
        {"vertices": [{"id": "a"}, {"id": "b"}], "edges": [{"id": "e", "ends": ["a", "b"], "length": 1, "multiplicity": True}]},
    ],
)
def test_bad_curve_rejected(obj):
    with pytest.raises(ParseError):
        io.curve_from_json(obj)


def test_bad_function_rejected():
    good = io.function_to_json(gen.function(gen.rng(1), STAR3))
    with pytest.raises(ParseError):
        io.function_from_json(STAR3, {**good, "values": {**good["values"], "zz": "1"}})
    with pytest.raises(ParseError):
        io.function_from_json(STAR3, {**good, "values": {}})
    with pytest.raises(ParseError):
        io.function_from_json(STAR3, {**good, "leaf_slopes": {"nope": "1"}})
    with pytest.raises(ParseError):
        io.function_from_json(STAR3, {**good, "mode": "R"})


def test_bad_cocycle_rejected():
    g = io.group_to_json(seg_swap_group())
    with pytest.raises(ParseError):
        io.cocycle_from_json(SEG, {"kind": "3X", "group": g, "values": []})
    with pytest.raises(ParseError):
        io.cocycle_from_json(SEG, {"kind": "2R", "group": g, "values": {"0,0": "0"}})
    with pytest.raises(ParseError):
        io.cocycle_from_json(SEG, {"kind": "1D", "group": g, "values": {"0": {"terms": []}, "7": {"terms": []}}})


def test_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ParseError):
        io.load_file(str(tmp_path / "absent.json"))
