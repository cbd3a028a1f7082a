"""Exact solution of square rational linear systems by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class SingularSystem(ArithmeticError):
    pass


def _integer_rows(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[list[int]]:
    rows = []
    for row, rhs in zip(a, b):
        entries = [Fraction(x) for x in row] + [Fraction(rhs)]
        scale = lcm(*(x.denominator for x in entries))
        rows.append([int(x * scale) for x in entries])
    return rows


def bareiss_solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``a x = b`` exactly.

    Rows are scaled to integers, then Bareiss elimination keeps every
    intermediate entry an integer (each division is exact); only the final
    back substitution produces fractions.
    """
    n = len(a)
    if n == 0:
        return []
    m = _integer_rows(a, b)
    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            raise SingularSystem(f"matrix is singular (column {k})")
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i][n]) - sum((m[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / m[i][i]
    return x
