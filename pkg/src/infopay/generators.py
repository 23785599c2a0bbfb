"""Seeded random instance generators for the property suites.

Everything draws small integers from a numpy PCG64 stream and builds
exact rational objects, so claims checked on generated instances are
checked with zero tolerance; float variants come from the objects'
``to_float`` methods.  Per-trial reproducibility: seed ``default_rng``
with the ``(seed, trial)`` tuple, which yields independent streams for
any trial order.

Within-hypothesis generation never rejects on the hypotheses that can
be enforced by construction: likelihood-ratio ordered pairs come from
nondecreasing multipliers, MLR structures from geometric tilts of a
base row, and garbling-ordered pairs from applying an explicit random
kernel.  Only the slightness condition is enforced by rejection (with a
single-task fallback, for which it holds trivially).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .discrimination import GapScenario
from .garbling import GarblingKernel, garble, is_slightly_more_informative
from .model import Dist, Firm, SignalStructure, SkillSpace, Task
from .orders import lr_geq

__all__ = [
    "PRNG_ID",
    "trial_rng",
    "random_skill_space",
    "random_dist",
    "random_task",
    "random_firm",
    "random_signal_structure",
    "random_mlr_structure",
    "extreme_structure",
    "random_kernel",
    "random_garbling_pair",
    "random_lr_above",
    "random_lr_pair",
    "random_lr_chain",
    "random_non_lr_pair",
    "random_narrowing_scenario",
]

PRNG_ID = "numpy:PCG64"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent, reproducible stream for one suite trial."""
    return np.random.default_rng((seed, trial))


def _int(rng: np.random.Generator, lo: int, hi: int) -> int:
    # numpy int64 would defeat exactness detection downstream
    return int(rng.integers(lo, hi + 1))


def random_skill_space(
    rng: np.random.Generator, max_types: int = 5, min_types: int = 2
) -> SkillSpace:
    n = _int(rng, min_types, max_types)
    theta = _int(rng, -3, 3)
    thetas = []
    for _ in range(n):
        thetas.append(theta)
        theta += _int(rng, 1, 3)
    return SkillSpace(tuple(thetas))


def random_dist(rng: np.random.Generator, space: SkillSpace) -> Dist:
    """Full-support rational distribution with small denominators."""
    weights = [_int(rng, 1, 9) for _ in range(space.size)]
    total = sum(weights)
    return Dist(space, tuple(Fraction(w, total) for w in weights))


def random_task(rng: np.random.Generator, n_types: int, monotone: bool = False) -> Task:
    if monotone:
        v = _int(rng, -3, 3)
        out = []
        for _ in range(n_types):
            out.append(v)
            v += _int(rng, 1, 3)
        return Task(tuple(out))
    return Task(tuple(_int(rng, -4, 4) for _ in range(n_types)))


def random_firm(
    rng: np.random.Generator,
    n_types: int,
    max_tasks: int = 4,
    monotone: bool = False,
) -> Firm:
    count = _int(rng, 1, max_tasks)
    return Firm(tuple(random_task(rng, n_types, monotone) for _ in range(count)))


def random_signal_structure(
    rng: np.random.Generator,
    space: SkillSpace,
    max_signals: int = 6,
    min_signals: int = 2,
    valued: bool = False,
) -> SignalStructure:
    """Row-stochastic structure; zero entries allowed, dead columns not."""
    n_s = _int(rng, min_signals, max_signals)
    n_t = space.size
    weights = [[_int(rng, 0, 4) for _ in range(n_s)] for _ in range(n_t)]
    for row in weights:
        if not any(row):
            row[_int(rng, 0, n_s - 1)] = _int(rng, 1, 4)
    for j in range(n_s):
        if not any(row[j] for row in weights):
            weights[_int(rng, 0, n_t - 1)][j] = _int(rng, 1, 4)
    rows = tuple(
        tuple(Fraction(w, sum(row)) for w in row) for row in weights
    )
    values = tuple(range(n_s)) if valued else None
    labels = tuple(f"s{k}" for k in range(n_s))
    return SignalStructure(space, labels, rows, values=values)


def random_mlr_structure(
    rng: np.random.Generator,
    space: SkillSpace,
    max_signals: int = 6,
    min_signals: int = 2,
) -> SignalStructure:
    """Valued structure with monotone likelihood ratios by construction.

    Row for type t is proportional to base[j] * tilt_t**j with tilts
    nondecreasing in t, so every likelihood cross product is ordered.
    """
    n_s = _int(rng, min_signals, max_signals)
    base = [_int(rng, 1, 4) for _ in range(n_s)]
    tilt = _int(rng, 1, 2)
    rows = []
    for _ in range(space.size):
        raw = [base[j] * tilt**j for j in range(n_s)]
        total = sum(raw)
        rows.append(tuple(Fraction(v, total) for v in raw))
        tilt += _int(rng, 0, 1)
    labels = tuple(f"s{k}" for k in range(n_s))
    return SignalStructure(space, labels, tuple(rows), values=tuple(range(n_s)))


def extreme_structure(space: SkillSpace, eps: Fraction | float) -> SignalStructure:
    """One signal per type; every off-type likelihood is exactly ``eps``
    times the own-type one, so the structure sits at the boundary of
    being within ``eps`` of full information."""
    n = space.size
    one = Fraction(1) if isinstance(eps, (int, Fraction)) else 1.0
    c = one / (1 + (n - 1) * eps)
    rows = tuple(
        tuple(c if j == i else eps * c for j in range(n)) for i in range(n)
    )
    labels = tuple(f"e{k}" for k in range(n))
    return SignalStructure(space, labels, rows)


def random_kernel(
    rng: np.random.Generator,
    fine_labels: tuple[str, ...],
    n_coarse: int,
) -> GarblingKernel:
    """Column-stochastic kernel whose every coarse row is reachable."""
    n_f = len(fine_labels)
    for _ in range(100):
        cols = []
        for _ in range(n_f):
            col = [_int(rng, 0, 4) for _ in range(n_coarse)]
            if not any(col):
                col[_int(rng, 0, n_coarse - 1)] = _int(rng, 1, 4)
            cols.append(col)
        if all(any(cols[f][s] for f in range(n_f)) for s in range(n_coarse)):
            break
    else:  # force reachability, keeping column sums positive
        for s in range(n_coarse):
            if not any(cols[f][s] for f in range(n_f)):
                cols[s % n_f][s] += 1
    matrix = tuple(
        tuple(Fraction(cols[f][s], sum(cols[f])) for f in range(n_f))
        for s in range(n_coarse)
    )
    labels = tuple(f"c{k}" for k in range(n_coarse))
    return GarblingKernel(labels, fine_labels, matrix)


def random_garbling_pair(
    rng: np.random.Generator,
    space: SkillSpace,
    mlr: bool = False,
    max_fine: int = 6,
    max_coarse: int = 5,
) -> tuple[SignalStructure, SignalStructure, GarblingKernel]:
    """(fine, coarse, kernel) with coarse produced by the kernel, so the
    pair is garbling-ordered by construction."""
    if mlr:
        fine = random_mlr_structure(rng, space, max_signals=max_fine)
    else:
        fine = random_signal_structure(rng, space, max_signals=max_fine)
    kernel = random_kernel(rng, fine.signals, _int(rng, 1, max_coarse))
    return fine, garble(fine, kernel), kernel


def random_lr_above(rng: np.random.Generator, lo: Dist) -> Dist:
    """Reweight by a nondecreasing positive multiplier: LR-above ``lo``."""
    mult = _int(rng, 1, 3)
    raw = []
    for v in lo.probs:
        raw.append(v * mult)
        mult += _int(rng, 0, 2)
    total = sum(raw)
    return Dist(lo.space, tuple(v / total for v in raw))


def random_lr_pair(rng: np.random.Generator, space: SkillSpace) -> tuple[Dist, Dist]:
    """(hi, lo) with hi LR-above lo."""
    lo = random_dist(rng, space)
    return random_lr_above(rng, lo), lo


def random_lr_chain(
    rng: np.random.Generator, space: SkillSpace, length: int = 3
) -> tuple[Dist, ...]:
    """LR-descending chain, highest first."""
    out = [random_dist(rng, space)]
    for _ in range(length - 1):
        out.insert(0, random_lr_above(rng, out[0]))
    return tuple(out)


def random_non_lr_pair(rng: np.random.Generator, space: SkillSpace) -> tuple[Dist, Dist]:
    """(a, b) with a *not* LR-above b; the violating index pair exists."""
    while True:
        a = random_dist(rng, space)
        b = random_dist(rng, space)
        if not lr_geq(a, b):
            return a, b
        if not lr_geq(b, a):
            return b, a
        # a and b proportional: redraw


def random_narrowing_scenario(
    rng: np.random.Generator,
    max_types: int = 4,
    max_tasks: int = 3,
    max_fine: int = 5,
    max_coarse: int = 4,
    max_attempts: int = 50,
) -> tuple[GapScenario, GarblingKernel]:
    """Scenario satisfying all five narrowing hypotheses.

    Monotone firm, MLR fine, kernel-derived coarse, and the LR chain
    q_i above p above q_j are enforced by construction; slightness is
    enforced by rejection.  When rejection keeps failing the firm is
    collapsed to a single monotone task, for which slightness holds at
    every belief.
    """
    space = random_skill_space(rng, max_types=max_types)
    q_i, p, q_j = random_lr_chain(rng, space, length=3)
    for attempt in range(max_attempts + 1):
        if attempt < max_attempts:
            firm = random_firm(rng, space.size, max_tasks=max_tasks, monotone=True)
        else:
            firm = Firm((random_task(rng, space.size, monotone=True),))
        fine = random_mlr_structure(rng, space, max_signals=max_fine)
        kernel = random_kernel(rng, fine.signals, _int(rng, 1, max_coarse))
        coarse = garble(fine, kernel)
        if is_slightly_more_informative(
            firm, q_i, fine, coarse, kernel
        ) and is_slightly_more_informative(firm, q_j, fine, coarse, kernel):
            scenario = GapScenario(
                firm=firm, p=p, q_i=q_i, q_j=q_j, coarse=coarse, fine=fine
            )
            return scenario, kernel
    raise AssertionError("unreachable: single-task firms are always slight")
