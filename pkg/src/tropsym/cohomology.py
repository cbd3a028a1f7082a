"""Cocycles of finite automorphism groups and explicit coboundary witnesses.

Group elements are addressed by their index in :class:`AutGroup` order.  The
coboundary conventions are

    (d f)(g)        = g f - f
    (d psi)(g1, g2) = psi(g1) + g1 psi(g2) - psi(g1 g2)

with ``g`` acting on functions by ``g f = f ∘ g⁻¹``, on divisors by pushing
points forward, and trivially on scalars.  Cocycle objects verify their
defining identity on construction and report the first violated tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .automorphism import AutGroup
from .curve import EdgePoint, Point, point_key
from .divisor import Divisor, act_on_divisor
from .errors import BaseMismatch, NotACocycle, WellDefinednessViolation
from .plfunction import Q, PLFunction, constant, div, linear_combination, pullback, trop_scale, trop_sum
from .rational import to_rational

Pair = tuple[int, int]


def _pairs(group: AutGroup) -> list[Pair]:
    n = group.order
    return [(i, j) for i in range(n) for j in range(n)]


def _as_pair_map(group: AutGroup, values) -> dict[Pair, object]:
    if isinstance(values, Mapping):
        out = dict(values)
    else:
        out = {(i, j): values[i][j] for i in range(group.order) for j in range(group.order)}
    missing = [p for p in _pairs(group) if p not in out]
    if missing:
        raise NotACocycle(f"2-cochain is missing values at {missing[:3]}")
    return {p: out[p] for p in _pairs(group)}


def _check_length(group: AutGroup, values: Sequence) -> None:
    if len(values) != group.order:
        raise NotACocycle(f"1-cochain needs {group.order} values, got {len(values)}")


class _Translates:
    """Memoized ``g f`` for the functions of one cochain."""

    def __init__(self, group: AutGroup) -> None:
        self.group = group
        self._cache: dict[tuple[int, int], PLFunction] = {}

    def __call__(self, g: int, f: PLFunction) -> PLFunction:
        key = (g, id(f))
        hit = self._cache.get(key)
        if hit is None:
            hit = f if g == 0 else pullback(self.group.elements[g], f)
            self._cache[key] = hit
        return hit


class _Samples:
    """Exact fingerprints of functions, with the group acting by permutation.

    A function is determined by its values at the model vertices and at its
    own knots, plus its tail slopes.  Sampling every function at one
    ``G``-closed point set containing all knots therefore decides equality,
    and ``(g f)(p) = f(g⁻¹ p)`` turns the action into a reindexing.
    """

    def __init__(self, group: AutGroup, functions: Iterable[PLFunction]) -> None:
        functions = list(functions)
        curve = group.curve
        seeds = set(group.model.fine_points())
        for f in functions:
            seeds.update(f.breakpoints())
        closed = {g.apply(p) for g in group.elements for p in seeds}
        self.points = sorted((p for p in closed if not curve.is_infinite_point(p)), key=point_key)
        self.leaves = [e.id for e in curve.edges.values() if e.infinite]
        index = {p: i for i, p in enumerate(self.points)}
        far = 1 + max((p.offset for p in self.points if isinstance(p, EdgePoint)), default=Fraction(0))
        self.perm = []
        for g in range(group.order):
            back = group.elements[group.inv(g)]
            moved = [index[back.apply(p)] for p in self.points]
            n = len(self.points)
            moved += [n + self.leaves.index(back.apply(EdgePoint(leaf, far)).edge) for leaf in self.leaves]
            self.perm.append(moved)
        raw = {id(f): [f(p) for p in self.points] + [f.tails[leaf] for leaf in self.leaves] for f in functions}
        # one common denominator turns every comparison into integer arithmetic
        scale = lcm(1, *(x.denominator for v in raw.values() for x in v))
        self._table = {k: tuple(int(x * scale) for x in v) for k, v in raw.items()}

    def __call__(self, f: PLFunction, g: int = 0) -> tuple[int, ...]:
        base = self._table[id(f)]
        if g == 0:
            return base
        return tuple(base[i] for i in self.perm[g])


def _vsum(*vs: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(sum, zip(*vs)))


# -- cocycle types ------------------------------------------------------------

class Cocycle1F:
    """A 1-cocycle ``G -> M(X)``: ``phi(g1) + g1 phi(g2) = phi(g1 g2)``."""

    def __init__(self, group: AutGroup, values: Sequence[PLFunction]) -> None:
        _check_length(group, values)
        for f in values:
            if f.curve != group.curve:
                raise BaseMismatch("cocycle value lives on a different curve")
        self.group = group
        self.values = tuple(values)
        sample = _Samples(group, self.values)
        for a, b in _pairs(group):
            if _vsum(sample(self.values[a]), sample(self.values[b], a)) != sample(self.values[group.mul(a, b)]):
                raise NotACocycle(f"cocycle law fails at ({a}, {b})", relation=[a, b])

    def __getitem__(self, g: int) -> PLFunction:
        return self.values[g]


class Cocycle1D:
    """A 1-cocycle ``G -> Div(X)``."""

    def __init__(self, group: AutGroup, values: Sequence[Divisor]) -> None:
        _check_length(group, values)
        for d in values:
            if d.curve != group.curve:
                raise BaseMismatch("cocycle value lives on a different curve")
        self.group = group
        self.values = tuple(values)
        for a, b in _pairs(group):
            lhs = self.values[a] + act_on_divisor(group.elements[a], self.values[b])
            if lhs != self.values[group.mul(a, b)]:
                raise NotACocycle(f"cocycle law fails at ({a}, {b})", relation=[a, b])

    def __getitem__(self, g: int) -> Divisor:
        return self.values[g]


class Cocycle2R:
    """A 2-cocycle ``G x G -> R`` for the trivial action."""

    def __init__(self, group: AutGroup, values) -> None:
        self.group = group
        self.values = {p: to_rational(v) for p, v in _as_pair_map(group, values).items()}
        phi, mul, n = self.values, group.mul, group.order
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if phi[b, c] - phi[mul(a, b), c] + phi[a, mul(b, c)] - phi[a, b] != 0:
                        raise NotACocycle(f"2-cocycle law fails at ({a}, {b}, {c})", relation=[a, b, c])

    def __getitem__(self, pair: Pair) -> Fraction:
        return self.values[pair]


class Cocycle2F:
    """A 2-cocycle ``G x G -> M(X) ⊗ Q`` (rational-slope functions)."""

    def __init__(self, group: AutGroup, values) -> None:
        self.group = group
        self.values = _as_pair_map(group, values)
        for f in self.values.values():
            if f.curve != group.curve:
                raise BaseMismatch("cocycle value lives on a different curve")
            if f.mode != Q:
                raise NotACocycle("2-cocycle values must be rational-slope (mode Q) functions")
        phi, mul, n = self.values, group.mul, group.order
        sample = _Samples(group, phi.values())
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    lhs = _vsum(sample(phi[b, c], a), sample(phi[a, mul(b, c)]))
                    if lhs != _vsum(sample(phi[mul(a, b), c]), sample(phi[a, b])):
                        raise NotACocycle(f"2-cocycle law fails at ({a}, {b}, {c})", relation=[a, b, c])

    def __getitem__(self, pair: Pair) -> PLFunction:
        return self.values[pair]


# -- coboundaries -------------------------------------------------------------

def coboundary_1F(group: AutGroup, f: PLFunction) -> Cocycle1F:
    """``g -> g f - f``."""
    return Cocycle1F(group, [pullback(g, f) - f for g in group.elements])


def coboundary_1D(group: AutGroup, e: Divisor) -> Cocycle1D:
    """``g -> g E - E``."""
    return Cocycle1D(group, [act_on_divisor(g, e) - e for g in group.elements])


def coboundary_2R(group: AutGroup, psi: Sequence) -> Cocycle2R:
    psi = [to_rational(x) for x in psi]
    return Cocycle2R(group, {(a, b): psi[a] + psi[b] - psi[group.mul(a, b)] for a, b in _pairs(group)})


def coboundary_2F(group: AutGroup, psi: Sequence[PLFunction]) -> Cocycle2F:
    act = _Translates(group)
    return Cocycle2F(
        group,
        {(a, b): psi[a] + act(a, psi[b]) - psi[group.mul(a, b)] for a, b in _pairs(group)},
    )


def is_coboundary_1F(phi: Cocycle1F, f: PLFunction) -> bool:
    if f.curve != phi.group.curve:
        raise BaseMismatch("function lives on a different curve")
    return all(pullback(g, f) - f == phi[i] for i, g in enumerate(phi.group.elements))


def is_coboundary_1D(phi: Cocycle1D, e: Divisor) -> bool:
    if e.curve != phi.group.curve:
        raise BaseMismatch("divisor lives on a different curve")
    return all(act_on_divisor(g, e) - e == phi[i] for i, g in enumerate(phi.group.elements))


def is_coboundary_2R(phi: Cocycle2R, psi: Sequence) -> bool:
    psi = [to_rational(x) for x in psi]
    mul = phi.group.mul
    return all(phi[a, b] == psi[a] + psi[b] - psi[mul(a, b)] for a, b in _pairs(phi.group))


def is_coboundary_2F(phi: Cocycle2F, psi: Sequence[PLFunction]) -> bool:
    for f in psi:
        if f.curve != phi.group.curve:
            raise BaseMismatch("function lives on a different curve")
    sample = _Samples(phi.group, [*phi.values.values(), *psi])
    mul = phi.group.mul
    return all(
        _vsum(sample(phi[a, b]), sample(psi[mul(a, b)])) == _vsum(sample(psi[a]), sample(psi[b], a))
        for a, b in _pairs(phi.group)
    )


# -- H^1(G, R) ----------------------------------------------------------------

@dataclass(frozen=True)
class RealCocycleVerdict:
    is_cocycle: bool
    relation: tuple[int, ...] | None = None
    element_order: int | None = None
    message: str = ""


def check_real_1cocycle(group: AutGroup, phi: Sequence) -> RealCocycleVerdict:
    """Decide whether ``phi: G -> R`` is a 1-cocycle (trivial action).

    Such a cocycle is a homomorphism from a finite group to ``R`` and must
    vanish; a failure names the first violated relation
    ``phi(g1) + phi(g2) = phi(g1 g2)`` together with the order of ``g1``.
    """
    _check_length(group, phi)
    phi = [to_rational(x) for x in phi]
    for a, b in _pairs(group):
        ab = group.mul(a, b)
        if phi[a] + phi[b] != phi[ab]:
            k = group.element_order(a)
            msg = f"phi({a}) + phi({b}) = {phi[a] + phi[b]} but phi({ab}) = {phi[ab]}"
            if phi[a]:
                msg += f"; element {a} has order {k}, so a homomorphism needs {k} * phi({a}) = phi(e) = 0"
            return RealCocycleVerdict(False, (a, b), k, msg)
    for g, x in enumerate(phi):
        if x:
            k = group.element_order(g)
            return RealCocycleVerdict(False, (g,), k, f"nonzero value {x} at element {g} of finite order {k}")
    return RealCocycleVerdict(True, message="zero cocycle")


# -- witnesses ----------------------------------------------------------------

def h90_witness(phi: Cocycle1F) -> PLFunction:
    """``f = -max_g phi(g)`` satisfies ``h f - f = phi(h)`` for every ``h``."""
    f = trop_scale(trop_sum(phi.values), -1)
    for h, g in enumerate(phi.group.elements):
        assert pullback(g, f) - f == phi[h], f"Hilbert 90 witness fails at element {h}"
    return f


def real_2cocycle_witness(phi: Cocycle2R) -> list[Fraction]:
    """``psi(g) = (1/|G|) sum_h phi(g, h)``, so that ``d psi = phi``."""
    n = phi.group.order
    psi = [sum((phi[g, h] for h in range(n)), Fraction(0)) / n for g in range(n)]
    assert is_coboundary_2R(phi, psi), "averaged 2-cochain is not a primitive"
    return psi


def mq_2cocycle_witness(phi: Cocycle2F) -> list[PLFunction]:
    """The same averaging formula with rational-slope functions."""
    n = phi.group.order
    psi = [linear_combination([(Fraction(1, n), phi[g, h]) for h in range(n)]) for g in range(n)]
    assert is_coboundary_2F(phi, psi), "averaged 2-cochain is not a primitive"
    return psi


def div_1cocycle_witness(phi: Cocycle1D) -> Divisor:
    """A divisor ``E`` with ``g E - E = phi(g)`` for all ``g``.

    Div(X) splits into orbit summands.  On the orbit of a representative
    ``P``, identifying divisors with functions on ``G`` constant on cosets of
    the stabilizer turns the witness ``f(h) = -phi(h⁻¹)(h)`` into: the
    coefficient of ``E`` at ``hP`` is minus the coefficient of ``hP`` in
    ``phi(h)``.  Independence of the choice of ``h`` is checked.
    """
    group = phi.group
    support = sorted({p for d in phi.values for p in d.support()}, key=point_key)
    done: set[Point] = set()
    terms: dict[Point, int] = {}
    for rep in support:
        if rep in done:
            continue
        images = [g.apply(rep) for g in group.elements]
        done.update(images)
        for q in sorted(set(images), key=point_key):
            coeffs = {-phi[h].coefficient(q) for h, img in enumerate(images) if img == q}
            if len(coeffs) != 1:
                raise WellDefinednessViolation(
                    f"coset values disagree at {q!r}: {sorted(coeffs)}; the input is not a cocycle"
                )
            terms[q] = coeffs.pop()
    e = Divisor(group.curve, terms)
    assert is_coboundary_1D(phi, e), "orbit-wise witness is not a primitive"
    return e


def div_of_cocycle(phi: Cocycle1F) -> Cocycle1D:
    """Push a cocycle in M(X) forward to Div(X) through ``div``."""
    return Cocycle1D(phi.group, [div(f) for f in phi.values])


def zero_cocycle_1F(group: AutGroup) -> Cocycle1F:
    z = constant(group.curve, 0)
    return Cocycle1F(group, [z] * group.order)
