"""Exact scalars: parsing and canonical formatting of rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import ParseError

INF = math.inf

Length = Union[Fraction, float]


def to_rational(value: object) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing floats (they are not exact)."""
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot parse rational {value!r}") from None
    raise ParseError(f"expected a rational as int or 'p/q' string, got {value!r}")


def to_length(value: object) -> Length:
    if isinstance(value, str) and value.strip() == "inf":
        return INF
    if isinstance(value, float) and value == INF:
        return INF
    return to_rational(value)


def fmt_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_length(x: Length) -> str:
    return "inf" if x == INF else fmt_rational(x)


def fmt_offset(x: Fraction) -> str:
    """Short form used inside generated vertex ids (``e1@1/2``, ``e1@3``)."""
    return str(x)


def is_integral(x: Fraction) -> bool:
    return x.denominator == 1
