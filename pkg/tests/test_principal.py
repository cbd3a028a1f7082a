from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from tropsym import generators as gen
from tropsym.curve import EdgePoint, VertexPoint
from tropsym.divisor import Divisor, degree
from tropsym.errors import BaseMismatch, DegreeNonzero, NotInvariantDivisor, NotPrincipal
from tropsym.fixtures import CIRC12, SEG, STAR3, THETA112, circle, star, symmetric_group
from tropsym.plfunction import constant, div, evaluate, pullback, ramp
from tropsym.principal import invariant_principal_witness, is_equivalent, is_principal, solve_principal

from strategies import rng_of, seeds

F = Fraction
FIXTURES = (STAR3, THETA112, CIRC12, SEG)


def test_zero_divisor_gives_zero_function():
    for c in FIXTURES:
        assert solve_principal(c, Divisor(c)) == constant(c, 0)


def test_star_point_equivalent_to_centre():
    p = EdgePoint("l1", F(1))
    f = solve_principal(STAR3, Divisor.at(STAR3, "O") - Divisor.point(STAR3, p))
    assert f == ramp(STAR3, "l1", 1)


def test_infinite_point_equivalent_to_centre():
    d = Divisor.at(STAR3, "O") - Divisor.at(STAR3, "I2")
    f = solve_principal(STAR3, d)
    assert f.tails["l2"] == 1 and div(f) == d


def test_degree_must_vanish():
    with pytest.raises(DegreeNonzero):
        solve_principal(STAR3, Divisor.at(STAR3, "O"))


def test_circle_certificate():
    with pytest.raises(NotPrincipal) as exc:
        solve_principal(CIRC12, Divisor.at(CIRC12, "B") - Divisor.at(CIRC12, "A"))
    cert = exc.value.certificate
    assert cert.edge == "e1" and cert.slope == F(2, 3)


def test_leaf_multiplicity_divisibility():
    c = star(3, (2, 1, 1))
    ok = 2 * Divisor.at(c, "I1") - 2 * Divisor.at(c, "O")
    f = solve_principal(c, ok)
    assert f.tails["l1"] == -1
    with pytest.raises(NotPrincipal) as exc:
        solve_principal(c, Divisor.at(c, "I1") - Divisor.at(c, "O"))
    assert exc.value.certificate.slope == F(1, 2)


def test_base_mismatch():
    with pytest.raises(BaseMismatch):
        solve_principal(STAR3, Divisor(SEG))


def test_is_equivalent_reports_witness_direction():
    d = Divisor.point(STAR3, EdgePoint("l3", F(5, 2)))
    e = Divisor.at(STAR3, "O")
    r = is_equivalent(STAR3, d, e)
    assert r.equivalent and d == e + div(r.witness)
    assert not is_equivalent(STAR3, d, 2 * e).equivalent


def _circle_oracle(a, b, x):
    """Two-arc slopes for P - Q on a circle, P at arc coordinate 0, Q at x (sympy solve)."""
    s1, s2 = sympy.symbols("s1 s2")
    total = a + b
    sol = sympy.solve([s1 * x - s2 * (total - x), s1 + s2 - 1], [s1, s2])
    return F(str(sol[s1])), F(str(sol[s2]))


@given(seeds)
def test_solution_is_unique_up_to_constant(seed):
    r = rng_of(seed)
    for c in FIXTURES:
        f = gen.function(r, c)
        g = solve_principal(c, div(f))
        v0 = VertexPoint(c.base_vertex)
        assert evaluate(g, v0) == 0
        assert g == f - constant(c, evaluate(f, v0))


@given(seeds)
def test_circle_points_never_equivalent(seed):
    r = rng_of(seed)
    a, b = gen.rational(r, F(1, 6), 3), gen.rational(r, F(1, 6), 3)
    if a == 0 or b == 0:
        return
    c = circle(a, b)
    x = gen.rational(r, F(1, 6), a + b - F(1, 6))
    if not 0 < x < a + b:
        return
    q = c.point_on("e1", x) if x <= a else c.point_on("e2", a + b - x)
    with pytest.raises(NotPrincipal) as exc:
        solve_principal(c, Divisor.at(c, "A") - Divisor.point(c, q))
    assert exc.value.certificate.slope in _circle_oracle(a, b, x)


@given(seeds)
def test_star_picard_is_degree(seed):
    r = rng_of(seed)
    d = gen.divisor(r, STAR3, infinite=True)
    assert is_principal(STAR3, d - degree(d) * Divisor.at(STAR3, "O"))


def test_invariant_witness():
    g = symmetric_group(3)
    pts = [EdgePoint(f"l{k}", F(1)) for k in (1, 2, 3)]
    e = 3 * Divisor.at(STAR3, "O") - Divisor(STAR3, {p: 1 for p in pts})
    f = invariant_principal_witness(STAR3, g, e)
    assert div(f) == e
    assert all(pullback(x, f) == f for x in g.elements)
    with pytest.raises(NotInvariantDivisor):
        invariant_principal_witness(STAR3, g, Divisor.at(STAR3, "O") - Divisor.point(STAR3, pts[0]))
