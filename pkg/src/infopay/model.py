"""Finite screening model: types, beliefs, signals, tasks, pay.

Workers carry a skill type drawn from a finite ordered set.  A signal
structure sends each type to a distribution over finitely many signal
labels.  A firm holds finitely many tasks, each assigning a surplus to
every type.  Given a signal, the employer forms a posterior under its
*perceived* type distribution, assigns the worker to a task maximizing
expected surplus under that posterior, and pays that expectation.

Average pay mixes the two distributions deliberately: pay per signal is
computed under the perceived distribution, while signal frequencies are
weighted by the *true* one.

All numbers may be floats or exact rationals; computations never force
a conversion, so rational inputs give exact results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .numeric import (
    DEFAULT_TOL,
    Number,
    all_exact,
    pick_tol,
    validate_prob_vector,
)

__all__ = [
    "SkillSpace",
    "Dist",
    "Task",
    "Firm",
    "SignalStructure",
    "Population",
    "posterior",
    "argmax_task_set",
    "assign_task",
    "worker_pay",
    "average_pay",
    "uninformative_structure",
    "fully_informative_structure",
    "binary_symmetric_structure",
]


@dataclass(frozen=True)
class SkillSpace:
    """Strictly increasing tuple of at least two real skill levels."""

    thetas: tuple[Number, ...]

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(self.thetas))
        if len(self.thetas) < 2:
            raise InputError("skill space needs at least two types")
        for lo, hi in zip(self.thetas, self.thetas[1:]):
            if not lo < hi:
                raise InputError("skill levels must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.thetas)

    def to_float(self) -> "SkillSpace":
        return SkillSpace(tuple(float(t) for t in self.thetas))


@dataclass(frozen=True)
class Dist:
    """Probability vector over a skill space.

    Entries may be zero (posteriors can be degenerate); functions that
    need a prior insist on full support at the call site.
    """

    space: SkillSpace
    probs: tuple[Number, ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(self.probs))
        if len(self.probs) != self.space.size:
            raise InputError(
                f"distribution has {len(self.probs)} entries for "
                f"{self.space.size} types"
            )
        validate_prob_vector(self.probs, "distribution")

    @property
    def full_support(self) -> bool:
        return all(v > 0 for v in self.probs)

    def to_float(self) -> "Dist":
        return Dist(self.space.to_float(), tuple(float(v) for v in self.probs))


@dataclass(frozen=True)
class Task:
    """Surplus per type, aligned with the skill space order."""

    surplus: tuple[Number, ...]

    def __post_init__(self):
        object.__setattr__(self, "surplus", tuple(self.surplus))
        if not self.surplus:
            raise InputError("task needs at least one surplus entry")

    @property
    def is_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.surplus, self.surplus[1:]))

    def to_float(self) -> "Task":
        return Task(tuple(float(v) for v in self.surplus))


@dataclass(frozen=True)
class Firm:
    """Nonempty set of tasks of equal width."""

    tasks: tuple[Task, ...]

    def __post_init__(self):
        object.__setattr__(self, "tasks", tuple(self.tasks))
        if not self.tasks:
            raise InputError("firm needs at least one task")
        width = len(self.tasks[0].surplus)
        if any(len(t.surplus) != width for t in self.tasks):
            raise InputError("all tasks in a firm must cover the same types")

    @property
    def is_monotone(self) -> bool:
        """True when every task has strictly increasing surplus."""
        return all(t.is_increasing for t in self.tasks)

    def to_float(self) -> "Firm":
        return Firm(tuple(t.to_float() for t in self.tasks))


@dataclass(frozen=True)
class SignalStructure:
    """Likelihood matrix: one row per type, one column per signal label.

    ``values`` optionally places the signals on the real line (required
    by likelihood-ratio monotonicity checks); when present they must be
    strictly increasing so that label order equals value order.
    """

    space: SkillSpace
    signals: tuple[str, ...]
    likelihood: tuple[tuple[Number, ...], ...]
    values: tuple[Number, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "signals", tuple(self.signals))
        object.__setattr__(
            self, "likelihood", tuple(tuple(row) for row in self.likelihood)
        )
        if self.values is not None:
            object.__setattr__(self, "values", tuple(self.values))
        if not self.signals:
            raise InputError("signal structure needs at least one signal")
        if len(set(self.signals)) != len(self.signals):
            raise InputError("signal labels must be unique")
        if len(self.likelihood) != self.space.size:
            raise InputError(
                f"likelihood has {len(self.likelihood)} rows for "
                f"{self.space.size} types"
            )
        for k, row in enumerate(self.likelihood):
            if len(row) != len(self.signals):
                raise InputError(f"likelihood row for type index {k} has wrong width")
            validate_prob_vector(row, f"likelihood row for type index {k}")
        for j, label in enumerate(self.signals):
            if not any(row[j] > 0 for row in self.likelihood):
                raise InputError(f"signal {label!r} has zero likelihood everywhere")
        if self.values is not None:
            if len(self.values) != len(self.signals):
                raise InputError("signal values must match signal count")
            for lo, hi in zip(self.values, self.values[1:]):
                if not lo < hi:
                    raise InputError("signal values must be strictly increasing")

    @property
    def n_signals(self) -> int:
        return len(self.signals)

    def index(self, label: str) -> int:
        try:
            return self.signals.index(label)
        except ValueError:
            raise InputError(f"unknown signal label {label!r}") from None

    def column(self, j: int) -> tuple[Number, ...]:
        return tuple(row[j] for row in self.likelihood)

    def to_float(self) -> "SignalStructure":
        return SignalStructure(
            self.space.to_float(),
            self.signals,
            tuple(tuple(float(v) for v in row) for row in self.likelihood),
            None if self.values is None else tuple(float(v) for v in self.values),
        )


@dataclass(frozen=True)
class Population:
    """True distribution, perceived distribution, and signal structure."""

    p: Dist
    q: Dist
    sig: SignalStructure

    def __post_init__(self):
        if not (self.p.space == self.q.space == self.sig.space):
            raise InputError("population components use different skill spaces")
        if not self.p.full_support:
            raise InputError("true distribution must have full support")
        if not self.q.full_support:
            raise InputError("perceived distribution must have full support")

    def to_float(self) -> "Population":
        return Population(self.p.to_float(), self.q.to_float(), self.sig.to_float())


# -- belief updating and assignment ------------------------------------------


def _check_same_space(sig: SignalStructure, d: Dist, who: str) -> None:
    if sig.space != d.space:
        raise InputError(f"{who}: distribution and signal structure disagree on types")


def posterior(q: Dist, sig: SignalStructure, signal: str) -> Dist:
    """Bayes posterior over types after observing ``signal`` under ``q``.

    Requires a full-support prior, so the posterior is defined for every
    signal (each signal has positive likelihood under some type).
    """
    _check_same_space(sig, q, "posterior")
    if not q.full_support:
        raise InputError("posterior requires a full-support prior")
    j = sig.index(signal)
    weights = [q.probs[i] * sig.likelihood[i][j] for i in range(q.space.size)]
    total = sum(weights)
    if not total > 0:
        raise InputError(f"signal {signal!r} has zero probability under the prior")
    return Dist(q.space, tuple(w / total for w in weights))


def _scores(firm: Firm, weights: Sequence[Number]) -> list[Number]:
    if len(firm.tasks[0].surplus) != len(weights):
        raise InputError("firm tasks and belief cover different type counts")
    return [
        sum(w * a for w, a in zip(weights, task.surplus)) for task in firm.tasks
    ]


def argmax_task_set(firm: Firm, belief: Dist, tol: float | None = None) -> tuple[int, ...]:
    """Indices of all tasks within tolerance of the best expected surplus."""
    scores = _scores(firm, belief.probs)
    slack = pick_tol(scores, DEFAULT_TOL if tol is None else tol)
    best = max(scores)
    return tuple(i for i, v in enumerate(scores) if v >= best - slack)


def assign_task(firm: Firm, belief: Dist, tie_break: str = "lowest") -> int:
    """Index of the chosen expected-surplus maximizer.

    Ties go to the lowest task index by default; ``tie_break="highest"``
    flips the rule (used to confirm results do not hinge on it).
    """
    if tie_break not in ("lowest", "highest"):
        raise InputError(f"unknown tie_break {tie_break!r}")
    scores = _scores(firm, belief.probs)
    best = max(scores)
    winners = [i for i, v in enumerate(scores) if v == best]
    return winners[0] if tie_break == "lowest" else winners[-1]


def _best_unnormalized(
    firm: Firm, weights: Sequence[Number], tie_break: str = "lowest"
) -> tuple[int, Number]:
    """Argmax task and its *unnormalized* score for positive-scaled weights.

    Positive scaling never changes the argmax, which lets pay routines
    skip the per-type division of Bayes normalization.
    """
    scores = _scores(firm, weights)
    best = max(scores)
    if tie_break == "lowest":
        idx = scores.index(best)
    else:
        idx = len(scores) - 1 - scores[::-1].index(best)
    return idx, best


def worker_pay(firm: Firm, q: Dist, sig: SignalStructure, signal: str) -> Number:
    """Expected surplus of the chosen task under the perceived posterior."""
    _check_same_space(sig, q, "worker_pay")
    if not q.full_support:
        raise InputError("worker_pay requires a full-support perception")
    j = sig.index(signal)
    weights = [q.probs[i] * sig.likelihood[i][j] for i in range(q.space.size)]
    total = sum(weights)
    if not total > 0:
        raise InputError(f"signal {signal!r} has zero probability under the prior")
    _, best = _best_unnormalized(firm, weights)
    return best / total


def average_pay(firm: Firm, pop: Population) -> Number:
    """Expected pay: perceived pay per signal, true signal frequencies."""
    n = pop.p.space.size
    if len(firm.tasks[0].surplus) != n:
        raise InputError("firm tasks and population cover different type counts")
    total = 0
    for j in range(pop.sig.n_signals):
        col = [pop.sig.likelihood[i][j] for i in range(n)]
        w_q = [pop.q.probs[i] * col[i] for i in range(n)]
        m_q = sum(w_q)
        m_p = sum(pop.p.probs[i] * col[i] for i in range(n))
        _, best = _best_unnormalized(firm, w_q)
        total += m_p * best / m_q
    return total


# -- common structure constructors -------------------------------------------


def uninformative_structure(
    space: SkillSpace,
    weights: Sequence[Number] | None = None,
    labels: Sequence[str] | None = None,
) -> SignalStructure:
    """Structure whose likelihood rows are identical across types.

    With no arguments this is the single-signal structure; ``weights``
    gives a common marginal over several signals.
    """
    if weights is None:
        weights = (1,)
    weights = tuple(weights)
    validate_prob_vector(weights, "uninformative structure weights")
    if any(not w > 0 for w in weights):
        raise InputError("uninformative structure weights must be positive")
    if labels is None:
        labels = tuple(f"u{k}" for k in range(len(weights)))
    rows = tuple(weights for _ in range(space.size))
    return SignalStructure(space, tuple(labels), rows)


def fully_informative_structure(space: SkillSpace) -> SignalStructure:
    """One signal per type, revealing it; signal values 0..n-1."""
    n = space.size
    labels = tuple(f"r{k}" for k in range(n))
    rows = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    return SignalStructure(space, labels, rows, values=tuple(range(n)))


def binary_symmetric_structure(space: SkillSpace, accuracy: Number) -> SignalStructure:
    """Two-signal structure for binary types: signal matches type with
    probability ``accuracy``.  Signals carry values 0 and 1."""
    if space.size != 2:
        raise InputError("binary symmetric structure needs exactly two types")
    if not (0 <= accuracy <= 1):
        raise InputError("accuracy must lie in [0, 1]")
    lam = accuracy
    rows = ((lam, 1 - lam), (1 - lam, lam))
    return SignalStructure(space, ("s0", "s1"), rows, values=(0, 1))
