"""Seeded random objects for property checks and the self-test.

All randomness flows through an explicit :class:`random.Random`, so a seed
fixes every generated object.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .automorphism import AutGroup
from .curve import Curve, Point, VertexPoint
from .divisor import Divisor
from .plfunction import Q, PLFunction, constant, distance_function, linear_combination, ramp, trop_add, with_mode

DEFAULT_SEED = 20240611


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("TROPSYM_SEED")
    return int(raw) if raw else default


def rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


def rational(r: random.Random, lo: Fraction | int, hi: Fraction | int, den: int = 6) -> Fraction:
    """Uniform on the grid ``(1/den) Z`` inside ``[lo, hi]``."""
    a, b = int(Fraction(lo) * den), int(Fraction(hi) * den)
    return Fraction(r.randint(a, b), den)


def point(r: random.Random, curve: Curve, finite: bool = True, vertex_bias: float = 0.25) -> Point:
    """A random point; interior offsets lie on a 1/6 grid, refined for short edges (leaves: up to 4)."""
    verts = curve.finite_vertices() if finite else list(curve.vertices)
    if r.random() < vertex_bias or not curve.edges:
        return VertexPoint(r.choice(verts))
    e = curve.edges[r.choice(list(curve.edges))]
    top = Fraction(4) if e.infinite else e.length
    den = 6
    while top * den <= 1:  # short edges need a finer grid to have interior points
        den *= 2
    x = rational(r, Fraction(1, den), top, den)
    while not 0 < x < top:
        x = rational(r, Fraction(1, den), top, den)
    return curve.point_on(e.id, x)


def divisor(r: random.Random, curve: Curve, terms: int = 4, coeff: int = 3, infinite: bool = False) -> Divisor:
    out: dict[Point, int] = {}
    for _ in range(terms):
        p = point(r, curve, finite=not infinite)
        out[p] = out.get(p, 0) + r.randint(-coeff, coeff)
    return Divisor(curve, out)


def function(r: random.Random, curve: Curve, terms: int = 3, coeff: int = 2, clamp: bool | None = None) -> PLFunction:
    """An integer combination of distance functions and leaf ramps, optionally
    clamped from below by a constant."""
    parts = []
    leaves = [e.id for e in curve.edges.values() if e.infinite]
    for _ in range(terms):
        c = r.choice([k for k in range(-coeff, coeff + 1) if k])
        if leaves and r.random() < 0.3:
            leaf = r.choice(leaves)
            a = rational(r, 0, 2)
            parts.append((c, ramp(curve, leaf, a + rational(r, Fraction(1, 6), 2), start=a)))
        else:
            parts.append((c, distance_function(curve, point(r, curve))))
    f = linear_combination(parts) if parts else constant(curve, 0)
    f = f + constant(curve, rational(r, -3, 3))
    if clamp is None:
        clamp = r.random() < 0.4
    if clamp:
        base = curve.base_vertex
        f = trop_add(f, constant(curve, f(VertexPoint(base)) + rational(r, -2, 1)))
    return f


def q_function(r: random.Random, curve: Curve, terms: int = 3) -> PLFunction:
    """A rational-slope function: a rational combination of integral ones."""
    parts = [(rational(r, -2, 2, den=r.choice((1, 2, 3, 6))), with_mode(function(r, curve, 2), Q)) for _ in range(terms)]
    return linear_combination(parts) if parts else constant(curve, 0, Q)


def orbit_divisor(r: random.Random, group: AutGroup, orbits: int = 2, coeff: int = 3) -> Divisor:
    """A random ``G``-invariant divisor: integer combination of orbit sums."""
    curve = group.curve
    out: dict[Point, int] = {}
    for _ in range(orbits):
        c = r.randint(-coeff, coeff)
        for q in group.orbit(point(r, curve)):
            out[q] = out.get(q, 0) + c
    return Divisor(curve, out)


def scalars(r: random.Random, n: int, lo: int = -3, hi: int = 3) -> list[Fraction]:
    return [rational(r, lo, hi) for _ in range(n)]


def functions(r: random.Random, curve: Curve, n: int) -> list[PLFunction]:
    return [function(r, curve) for _ in range(n)]


__all__ = [
    "DEFAULT_SEED",
    "divisor",
    "function",
    "functions",
    "orbit_divisor",
    "point",
    "q_function",
    "rational",
    "rng",
    "scalars",
    "seed_from_env",
]
