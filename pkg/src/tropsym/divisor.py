"""Divisors: finite integer combinations of points of a curve."""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Mapping

from .curve import Curve, Point, VertexPoint, point_key
from .errors import BaseMismatch

if TYPE_CHECKING:
    from .automorphism import Automorphism


class Divisor:
    """An element of Div(X).

    ``terms`` maps points to nonzero integer coefficients and is kept sorted in
    canonical point order, so equal divisors compare and serialize equally.
    """

    __slots__ = ("curve", "terms")

    def __init__(self, curve: Curve, terms: Mapping[Point, int] | Iterable[tuple[Point, int]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Point, int] = {}
        for p, a in items:
            if isinstance(a, bool) or not isinstance(a, int):
                if getattr(a, "denominator", None) == 1:
                    a = int(a)
                else:
                    raise TypeError(f"divisor coefficients must be integers, got {a!r}")
            curve.check_point(p)
            acc[p] = acc.get(p, 0) + a
        self.curve = curve
        self.terms = {p: acc[p] for p in sorted(acc, key=point_key) if acc[p]}

    @classmethod
    def point(cls, curve: Curve, p: Point, coeff: int = 1) -> Divisor:
        return cls(curve, {p: coeff})

    @classmethod
    def at(cls, curve: Curve, vertex: str, coeff: int = 1) -> Divisor:
        return cls(curve, {VertexPoint(vertex): coeff})

    def coefficient(self, p: Point) -> int:
        return self.terms.get(p, 0)

    def support(self) -> list[Point]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: Divisor) -> None:
        if self.curve != other.curve:
            raise BaseMismatch("divisors live on different curves")

    def __add__(self, other: Divisor) -> Divisor:
        self._check(other)
        return Divisor(self.curve, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> Divisor:
        return Divisor(self.curve, {p: -a for p, a in self.terms.items()})

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __rmul__(self, n: int) -> Divisor:
        return Divisor(self.curve, {p: n * a for p, a in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.curve == other.curve and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{a}*{p!r}" for p, a in self.terms.items()) + ")"


def div_add(d: Divisor, e: Divisor) -> Divisor:
    return d + e


def div_neg(d: Divisor) -> Divisor:
    return -d


def div_sub(d: Divisor, e: Divisor) -> Divisor:
    return d - e


def degree(d: Divisor) -> int:
    return sum(d.terms.values())


def act_on_divisor(g: "Automorphism", d: Divisor) -> Divisor:
    """``g D``: push every point of the support forward through ``g``."""
    if g.curve != d.curve:
        raise BaseMismatch("automorphism and divisor live on different curves")
    return Divisor(d.curve, [(g.apply(p), a) for p, a in d.terms.items()])
