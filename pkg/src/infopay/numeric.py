"""Dual-mode arithmetic helpers.

Every quantitative routine in this package is generic over the number
type of its inputs: plain ``float`` (the default mode) or exact
rationals (``int`` / ``fractions.Fraction``).  Exactness is detected
from the values themselves; when every input is exact, comparisons use
zero slack, otherwise the documented float tolerances apply.

Tolerance registry (float mode):

* ``DEFAULT_TOL``   -- generic value comparisons (pay, argmax ties).
* ``ORDER_TOL``     -- slack scale for stochastic-order cross products.
* ``LP_TOL``        -- feasibility residual for the garbling program.
* ``SIGN_TOL``      -- slack when testing signed claims.
* ``DIST_SUM_TOL``  -- probability vectors must sum to 1 within this.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InputError

Number = Union[int, float, Fraction]

EXACT_TYPES = (int, Fraction)

DEFAULT_TOL = 1e-9
ORDER_TOL = 1e-12
LP_TOL = 1e-8
SIGN_TOL = 1e-9
DIST_SUM_TOL = 1e-9


def is_exact(*values: Number) -> bool:
    """True when every value is an int or Fraction (no floats anywhere)."""
    return all(isinstance(v, EXACT_TYPES) for v in values)


def all_exact(values: Iterable[Number]) -> bool:
    return all(isinstance(v, EXACT_TYPES) for v in values)


def pick_tol(values: Iterable[Number], float_tol: float) -> Number:
    """Zero slack for exact inputs, ``float_tol`` otherwise."""
    return 0 if all_exact(values) else float_tol


def parse_exact(text: str) -> Fraction:
    """Parse ``a/b`` or decimal text to an exact rational."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def parse_float(text: str) -> float:
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a number: {text!r}") from exc


def format_number(x: Number) -> str:
    """Canonical text form: reduced ``a/b`` for rationals, repr for floats."""
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def validate_prob_vector(
    probs: Sequence[Number], what: str, sum_tol: float = DIST_SUM_TOL
) -> None:
    """Nonnegative entries summing to 1 (exactly for rational input)."""
    for k, v in enumerate(probs):
        if v < 0:
            raise InputError(f"{what}: entry {k} is negative ({v!r})")
    total = sum(probs)
    tol = pick_tol(probs, sum_tol)
    if not (1 - tol <= total <= 1 + tol):
        raise InputError(f"{what}: entries sum to {total!r}, expected 1")
