"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularSystem
from .scalar import canonical


def solve_rational(matrix: Sequence[Sequence[Fraction]], rhs: Sequence) -> list:
    """Solve ``matrix @ x = rhs`` exactly.

    ``matrix`` must be square with rational entries.  The right-hand side may
    hold any exact scalars closed under rational scaling (``Fraction`` or
    ``PiScalar``).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve_rational needs a square system")
    a = [[Fraction(x) for x in row] for row in matrix]
    b = list(rhs)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {col}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        row_c = a[col]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            f = a[r][col] * inv
            row_r = a[r]
            for k in range(col, n):
                if row_c[k]:
                    row_r[k] -= f * row_c[k]
            b[r] = b[r] - b[col] * f
    return [canonical(b[i] * (1 / a[i][i])) for i in range(n)]
