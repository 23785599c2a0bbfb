"""Dense phase-1 simplex for small equality-form feasibility problems.

Solves: find x >= 0 with A x = b, by minimizing the sum of artificial
variables under Bland's rule.  Arithmetic is generic: with Fraction or
int entries every comparison is exact and termination is guaranteed;
with floats a small pivot epsilon guards against noise.  Problems here
are tiny (tens of variables), so no factorization or sparsity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .numeric import LP_TOL, Number, all_exact

__all__ = ["feasible_point"]

_FLOAT_EPS = 1e-11


def feasible_point(
    a_rows: Sequence[Sequence[Number]],
    b: Sequence[Number],
    tol: float | None = None,
) -> list[Number] | None:
    """A nonnegative solution of ``A x = b``, or None if infeasible.

    ``tol`` bounds the acceptable phase-1 objective in float mode
    (default ``LP_TOL``); with exact entries the objective must vanish
    exactly.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    exact = all(all_exact(row) for row in a_rows) and all_exact(b)
    eps = 0 if exact else _FLOAT_EPS
    feas_tol = 0 if exact else (LP_TOL if tol is None else tol)

    # plain ints would fall to float division below; promote when exact
    def num(v: Number) -> Number:
        return Fraction(v) if exact else v

    # artificial basis needs b >= 0
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([-num(v) for v in a_rows[i]])
            rhs.append(-num(b[i]))
        else:
            rows.append([num(v) for v in a_rows[i]])
            rhs.append(num(b[i]))

    total = n + m  # structural + artificial columns
    tableau = [
        rows[i] + [1 if j == i else 0 for j in range(m)] + [rhs[i]]
        for i in range(m)
    ]
    basis = [n + i for i in range(m)]
    # reduced costs for min sum(artificials); artificial basis => subtract
    # each constraint row from the cost row
    red = [0] * (total + 1)
    for j in range(n):
        red[j] = -sum(tableau[i][j] for i in range(m))
    red[total] = -sum(rhs)

    while True:
        enter = -1
        for j in range(total):
            if red[j] < -eps:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio = None
        for i in range(m):
            coef = tableau[i][enter]
            if coef > eps:
                ratio = tableau[i][total] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return None  # numerically unbounded; cannot happen with exact input
        piv = tableau[leave][enter]
        tableau[leave] = [v / piv for v in tableau[leave]]
        pivot_row = tableau[leave]
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                factor = tableau[i][enter]
                tableau[i] = [
                    v - factor * w for v, w in zip(tableau[i], pivot_row)
                ]
        if red[enter] != 0:
            factor = red[enter]
            red = [v - factor * w for v, w in zip(red, pivot_row)]
        basis[leave] = enter

    objective = -red[total]
    if objective > feas_tol:
        return None
    x: list[Number] = [0] * n
    for i, var in enumerate(basis):
        if var < n:
            value = tableau[i][total]
            if not exact and -feas_tol < value < 0:
                value = 0
            x[var] = value
    return x
