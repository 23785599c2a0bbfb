"""Informativeness comparisons between signal structures.

A structure is (weakly) less informative than another when its
likelihood matrix is a column-stochastic mixture of the other's: a
garbling kernel.  Deciding the order is a linear feasibility problem,
solved by the in-package phase-1 simplex so rational inputs stay exact.

The kernel found is one witness among possibly many; downstream
operations take the kernel they are given and never re-solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError
from .model import Dist, Firm, SignalStructure, argmax_task_set, posterior
from .numeric import LP_TOL, ORDER_TOL, Number, all_exact, pick_tol
from .simplex import feasible_point

__all__ = [
    "GarblingKernel",
    "JointDist",
    "find_garbling",
    "garble",
    "compose_kernels",
    "kernel_reproduces",
    "build_joints",
    "is_slightly_more_informative",
    "within_eps_of_full",
    "extremeness_eps_bound",
]


@dataclass(frozen=True)
class GarblingKernel:
    """Column-stochastic map from fine signals to coarse signals.

    ``matrix[s][f]`` is the probability that fine signal ``f`` is
    reported as coarse signal ``s``.  Columns sum to one (within the
    feasibility tolerance in float mode, exactly for rational entries).
    """

    coarse_signals: tuple[str, ...]
    fine_signals: tuple[str, ...]
    matrix: tuple[tuple[Number, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "coarse_signals", tuple(self.coarse_signals))
        object.__setattr__(self, "fine_signals", tuple(self.fine_signals))
        object.__setattr__(
            self, "matrix", tuple(tuple(row) for row in self.matrix)
        )
        n_c, n_f = len(self.coarse_signals), len(self.fine_signals)
        if not n_c or not n_f:
            raise InputError("kernel needs nonempty signal sets")
        if len(self.matrix) != n_c or any(len(r) != n_f for r in self.matrix):
            raise InputError("kernel matrix shape does not match signal sets")
        flat = [v for row in self.matrix for v in row]
        tol = pick_tol(flat, LP_TOL)
        for row in self.matrix:
            for v in row:
                if v < -tol or v > 1 + tol:
                    raise InputError("kernel entries must lie in [0, 1]")
        for f in range(n_f):
            col = sum(self.matrix[s][f] for s in range(n_c))
            if not (1 - tol <= col <= 1 + tol):
                raise InputError(
                    f"kernel column for fine signal "
                    f"{self.fine_signals[f]!r} sums to {col!r}, expected 1"
                )

    def to_float(self) -> "GarblingKernel":
        return GarblingKernel(
            self.coarse_signals,
            self.fine_signals,
            tuple(tuple(float(v) for v in row) for row in self.matrix),
        )


def _check_shared_space(fine: SignalStructure, coarse: SignalStructure) -> None:
    if fine.space != coarse.space:
        raise InputError("structures live on different skill spaces")


def _check_kernel_labels(
    kernel: GarblingKernel, fine: SignalStructure, coarse: SignalStructure
) -> None:
    if kernel.fine_signals != fine.signals:
        raise InputError("kernel fine signals do not match the fine structure")
    if kernel.coarse_signals != coarse.signals:
        raise InputError("kernel coarse signals do not match the coarse structure")


def kernel_reproduces(
    kernel: GarblingKernel,
    fine: SignalStructure,
    coarse: SignalStructure,
    tol: float | None = None,
) -> bool:
    """Does mixing the fine likelihoods through the kernel recover the
    coarse likelihoods (exactly, or within ``tol`` for floats)?"""
    _check_shared_space(fine, coarse)
    _check_kernel_labels(kernel, fine, coarse)
    flat = [v for row in kernel.matrix for v in row]
    slack = pick_tol(
        flat + [v for row in fine.likelihood for v in row], LP_TOL if tol is None else tol
    )
    for t in range(fine.space.size):
        for s in range(coarse.n_signals):
            mixed = sum(
                kernel.matrix[s][f] * fine.likelihood[t][f]
                for f in range(fine.n_signals)
            )
            if abs(mixed - coarse.likelihood[t][s]) > slack:
                return False
    return True


def find_garbling(
    fine: SignalStructure, coarse: SignalStructure, tol: float | None = None
) -> GarblingKernel | None:
    """A kernel witnessing that ``coarse`` is a garbling of ``fine``,
    or None when no such kernel exists (within tolerance for floats).
    """
    _check_shared_space(fine, coarse)
    n_f, n_c, n_t = fine.n_signals, coarse.n_signals, fine.space.size
    n_var = n_c * n_f  # x[s * n_f + f] = g(s | f)
    rows: list[list[Number]] = []
    rhs: list[Number] = []
    for f in range(n_f):  # each fine signal reports somewhere
        row = [0] * n_var
        for s in range(n_c):
            row[s * n_f + f] = 1
        rows.append(row)
        rhs.append(1)
    for t in range(n_t):  # mixing reproduces the coarse likelihoods
        for s in range(n_c):
            row = [0] * n_var
            for f in range(n_f):
                row[s * n_f + f] = fine.likelihood[t][f]
            rows.append(row)
            rhs.append(coarse.likelihood[t][s])
    x = feasible_point(rows, rhs, tol=tol)
    if x is None:
        return None
    matrix = tuple(
        tuple(x[s * n_f + f] for f in range(n_f)) for s in range(n_c)
    )
    return GarblingKernel(coarse.signals, fine.signals, matrix)


def garble(
    fine: SignalStructure,
    kernel: GarblingKernel,
    values: Sequence[Number] | None = None,
) -> SignalStructure:
    """The coarse structure obtained by reporting fine signals through
    the kernel."""
    if kernel.fine_signals != fine.signals:
        raise InputError("kernel fine signals do not match the fine structure")
    rows = tuple(
        tuple(
            sum(
                kernel.matrix[s][f] * fine.likelihood[t][f]
                for f in range(fine.n_signals)
            )
            for s in range(len(kernel.coarse_signals))
        )
        for t in range(fine.space.size)
    )
    return SignalStructure(
        fine.space,
        kernel.coarse_signals,
        rows,
        values=None if values is None else tuple(values),
    )


def compose_kernels(outer: GarblingKernel, inner: GarblingKernel) -> GarblingKernel:
    """Chain two garblings: ``inner`` maps A to B, ``outer`` maps B to C;
    the result maps A straight to C (the transitivity witness)."""
    if inner.coarse_signals != outer.fine_signals:
        raise InputError("kernels do not chain: signal sets mismatch")
    n_c = len(outer.coarse_signals)
    n_b = len(outer.fine_signals)
    n_a = len(inner.fine_signals)
    matrix = tuple(
        tuple(
            sum(outer.matrix[c][m] * inner.matrix[m][a] for m in range(n_b))
            for a in range(n_a)
        )
        for c in range(n_c)
    )
    return GarblingKernel(outer.coarse_signals, inner.fine_signals, matrix)


@dataclass(frozen=True)
class JointDist:
    """Joint law of (type, coarse signal, fine signal) under one belief.

    ``probs[t][s][f]`` multiplies the type weight, the fine likelihood
    and the kernel entry, so type and coarse signal are independent
    conditional on the fine signal by construction.
    """

    space: object
    coarse_signals: tuple[str, ...]
    fine_signals: tuple[str, ...]
    probs: tuple[tuple[tuple[Number, ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "probs",
            tuple(tuple(tuple(r) for r in plane) for plane in self.probs),
        )
        flat = [v for plane in self.probs for row in plane for v in row]
        tol = pick_tol(flat, LP_TOL)
        if any(v < -tol for v in flat):
            raise InputError("joint probabilities must be nonnegative")
        total = sum(flat)
        if not (1 - max(tol, 1e-9) <= total <= 1 + max(tol, 1e-9)):
            raise InputError(f"joint probabilities sum to {total!r}, expected 1")

    def coarse_marginal(self, s: int) -> Number:
        return sum(sum(plane[s]) for plane in self.probs)

    def fine_marginal(self, f: int) -> Number:
        return sum(plane[s][f] for plane in self.probs for s in range(len(plane)))

    def pair_marginal(self, s: int, f: int) -> Number:
        return sum(plane[s][f] for plane in self.probs)


def build_joints(
    p: Dist,
    q: Dist,
    fine: SignalStructure,
    coarse: SignalStructure,
    kernel: GarblingKernel,
    tol: float | None = None,
) -> tuple[JointDist, JointDist]:
    """Joint (type, coarse, fine) laws under the true and the perceived
    type distribution, sharing one garbling kernel."""
    _check_shared_space(fine, coarse)
    if not (p.space == q.space == fine.space):
        raise InputError("distributions and structures disagree on types")
    if not (p.full_support and q.full_support):
        raise InputError("build_joints requires full-support distributions")
    if not kernel_reproduces(kernel, fine, coarse, tol=tol):
        raise InputError("kernel does not reproduce the coarse structure")

    def tensor(dist: Dist) -> JointDist:
        probs = tuple(
            tuple(
                tuple(
                    dist.probs[t]
                    * fine.likelihood[t][f]
                    * kernel.matrix[s][f]
                    for f in range(fine.n_signals)
                )
                for s in range(coarse.n_signals)
            )
            for t in range(dist.space.size)
        )
        return JointDist(dist.space, coarse.signals, fine.signals, probs)

    return tensor(p), tensor(q)


def is_slightly_more_informative(
    firm: Firm,
    q: Dist,
    fine: SignalStructure,
    coarse: SignalStructure,
    kernel: GarblingKernel,
    tol: float | None = None,
) -> bool:
    """True when, for every coarse/fine signal pair the kernel links,
    some task is optimal under both posteriors.

    This is the no-reassignment condition: the extra information never
    forces the firm off every task it would have chosen anyway.
    """
    _check_shared_space(fine, coarse)
    if not kernel_reproduces(kernel, fine, coarse, tol=tol):
        raise InputError("kernel does not reproduce the coarse structure")
    flat = [v for row in kernel.matrix for v in row]
    positive = 0 if all_exact(flat) else ORDER_TOL
    coarse_sets = [
        frozenset(argmax_task_set(firm, posterior(q, coarse, s), tol=tol))
        for s in coarse.signals
    ]
    fine_sets = [
        frozenset(argmax_task_set(firm, posterior(q, fine, f), tol=tol))
        for f in fine.signals
    ]
    for s in range(coarse.n_signals):
        for f in range(fine.n_signals):
            if kernel.matrix[s][f] > positive:
                if not (coarse_sets[s] & fine_sets[f]):
                    return False
    return True


def within_eps_of_full(
    sig: SignalStructure, eps: Number, tol: float | None = None
) -> bool:
    """True when every signal has a dominant type whose likelihood
    bounds all others after scaling by ``eps``.

    ``eps = 0`` means fully informative; ``math.inf`` accepts anything.
    """
    if isinstance(eps, float) and math.isinf(eps) and eps > 0:
        return True
    if eps < 0:
        raise InputError("eps must be nonnegative")
    slack = ORDER_TOL if tol is None else tol
    n_t = sig.space.size
    for j in range(sig.n_signals):
        col = [sig.likelihood[t][j] for t in range(n_t)]
        ok = False
        for star in range(n_t):
            if not col[star] > 0:
                continue
            bound = eps * col[star]
            pad = 0 if all_exact(col) and all_exact((eps,)) else slack * max(1, col[star])
            if all(col[t] <= bound + pad for t in range(n_t) if t != star):
                ok = True
                break
        if not ok:
            return False
    return True


def extremeness_eps_bound(q: Dist, delta: Number) -> Number:
    """Largest distance-from-full-information guaranteeing that every
    posterior under ``q`` puts mass at least ``1 - delta`` on one type.

    Uses the smallest prior odds across types, so the guarantee holds
    whichever type a signal favors; the price is conservatism when the
    dominant type is common.  ``delta = 1`` returns ``math.inf``: every
    posterior is trivially 1-extreme.
    """
    if not q.full_support:
        raise InputError("eps bound requires a full-support distribution")
    if not (0 < delta <= 1):
        raise InputError("delta must lie in (0, 1]")
    if delta == 1:
        return math.inf
    min_odds = min(v / (1 - v) for v in q.probs)
    return (delta / (1 - delta)) * min_odds / (q.space.size - 1)
