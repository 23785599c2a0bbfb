"""Decomposition of an information gain under misperception.

For a firm, a true distribution p, a perception q, and a pair of
garbling-ordered structures, the change in average pay from coarse to
fine splits into two parts:

* ``perception_correcting``: the value of the extra information coming
  purely from re-weighting signal frequencies toward their true law,
  holding the coarse task assignment fixed;
* ``instrumental``: the value of actually reassigning tasks on the
  finer information, evaluated at perceived posteriors.

The instrumental part is nonnegative for every firm and any perception.
The perception-correcting part is signed by the direction of
misperception when the firm is monotone and the fine structure has
monotone likelihood ratios.

Everything is computed through one shared kernel and one tie-broken
assignment per signal.  Computations avoid Bayes normalization where a
positive scaling cannot change an argmax, and the remaining conditional
probabilities cancel algebraically, so rational inputs stay exact and
fast.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, OrderingError
from .garbling import GarblingKernel, find_garbling, kernel_reproduces
from .model import Dist, Firm, SignalStructure
from .numeric import SIGN_TOL, Number, all_exact
from .orders import PerceptionClass, is_mlr, perception_class

__all__ = [
    "DecompResult",
    "SignReport",
    "decompose",
    "perception_correcting",
    "instrumental",
    "check_signs",
]

INSTRUMENTAL_FLOOR = -1e-12  # float-mode slack for the nonnegativity claim


@dataclass(frozen=True)
class DecompResult:
    """Outcome of one decomposition.

    ``total`` is computed from average pays directly, while the two
    parts come from the joint-law formulas; their agreement is a
    theorem, not an arithmetic identity, so tests check it rather than
    the constructor forcing it.
    """

    total: Number
    perception_correcting: Number
    instrumental: Number
    kernel: GarblingKernel
    assignment_coarse: tuple[int, ...]
    assignment_fine: tuple[int, ...]

    @property
    def identity_gap(self) -> Number:
        return self.total - (self.perception_correcting + self.instrumental)


def _resolve_kernel(
    fine: SignalStructure,
    coarse: SignalStructure,
    kernel: GarblingKernel | None,
    tol: float | None,
) -> GarblingKernel:
    if kernel is None:
        kernel = find_garbling(fine, coarse, tol=tol)
        if kernel is None:
            raise OrderingError(
                "fine structure is not more informative than the coarse one"
            )
        return kernel
    if not kernel_reproduces(kernel, fine, coarse, tol=tol):
        raise InputError("kernel does not reproduce the coarse structure")
    return kernel


def _best_for(firm: Firm, weights: list[Number], tie_break: str) -> tuple[int, Number]:
    scores = [
        sum(w * a for w, a in zip(weights, task.surplus)) for task in firm.tasks
    ]
    best = max(scores)
    if tie_break == "lowest":
        return scores.index(best), best
    return len(scores) - 1 - scores[::-1].index(best), best


def _core(
    firm: Firm,
    p: Dist,
    q: Dist,
    coarse: SignalStructure,
    fine: SignalStructure,
    kernel: GarblingKernel,
    tie_break: str,
) -> dict:
    if tie_break not in ("lowest", "highest"):
        raise InputError(f"unknown tie_break {tie_break!r}")
    if not (p.space == q.space == coarse.space == fine.space):
        raise InputError("decomposition inputs disagree on the skill space")
    if not (p.full_support and q.full_support):
        raise InputError("decomposition requires full-support distributions")
    n_t = p.space.size
    if len(firm.tasks[0].surplus) != n_t:
        raise InputError("firm tasks and distributions cover different type counts")
    n_c, n_f = coarse.n_signals, fine.n_signals
    g = kernel.matrix

    # coarse side: perceived weights, marginals, tie-broken assignment
    assign_c: list[int] = []
    w_coarse = 0
    for s in range(n_c):
        wq = [q.probs[t] * coarse.likelihood[t][s] for t in range(n_t)]
        m_q = sum(wq)
        m_p = sum(p.probs[t] * coarse.likelihood[t][s] for t in range(n_t))
        idx, best = _best_for(firm, wq, tie_break)
        assign_c.append(idx)
        w_coarse += m_p * best / m_q

    # fine side
    wq_f: list[list[Number]] = []
    m_qf: list[Number] = []
    m_pf: list[Number] = []
    ratio: list[Number] = []  # true over perceived signal frequency
    assign_f: list[int] = []
    best_f: list[Number] = []
    w_fine = 0
    for f in range(n_f):
        wq = [q.probs[t] * fine.likelihood[t][f] for t in range(n_t)]
        m_q = sum(wq)
        m_p = sum(p.probs[t] * fine.likelihood[t][f] for t in range(n_t))
        assert m_q > 0 and m_p > 0  # full support and live signal columns
        idx, best = _best_for(firm, wq, tie_break)
        wq_f.append(wq)
        m_qf.append(m_q)
        m_pf.append(m_p)
        ratio.append(m_p / m_q)
        assign_f.append(idx)
        best_f.append(best)
        w_fine += m_p * best / m_q

    # unnormalized perceived fine-posterior value of each coarse task:
    # dot(q-weights at fine signal f, surplus of the task kept at coarse s);
    # the Bayes denominators cancel against the joint-law weights, so the
    # linked pairs with a zero kernel entry drop out exactly (and a zero
    # perceived pair weight implies a zero true one, both being the kernel
    # entry times a positive marginal)
    kept = [firm.tasks[i].surplus for i in assign_c]
    e_dot: list[list[Number | None]] = [[None] * n_f for _ in range(n_c)]
    for s in range(n_c):
        row = g[s]
        surplus = kept[s]
        for f in range(n_f):
            if row[f] != 0:
                e_dot[s][f] = sum(w * a for w, a in zip(wq_f[f], surplus))

    correction = 0
    inst_joint = 0
    inst_signalwise = 0
    for f in range(n_f):
        mixed = 0  # sum over s of g[s][f] * e(s, f)
        gap = 0  # sum over s of g[s][f] * (best_f - e(s, f))
        for s in range(n_c):
            coef = g[s][f]
            if coef != 0:
                mixed += coef * e_dot[s][f]
                gap += coef * (best_f[f] - e_dot[s][f])
        correction += ratio[f] * mixed
        inst_joint += ratio[f] * gap
        inst_signalwise += ratio[f] * (best_f[f] - mixed)
    # subtract the perceived-frequency counterpart per coarse signal:
    # sum_s mu_p(s)/mu_q(s) * sum_f g[s][f] * e(s, f)
    for s in range(n_c):
        mu_p = 0
        mu_q = 0
        inner = 0
        for f in range(n_f):
            coef = g[s][f]
            if coef != 0:
                mu_p += coef * m_pf[f]
                mu_q += coef * m_qf[f]
                inner += coef * e_dot[s][f]
        assert mu_q > 0  # coarse signals stay reachable through the kernel
        correction -= (mu_p / mu_q) * inner

    return {
        "w_fine": w_fine,
        "w_coarse": w_coarse,
        "correction": correction,
        "inst_joint": inst_joint,
        "inst_signalwise": inst_signalwise,
        "assign_coarse": tuple(assign_c),
        "assign_fine": tuple(assign_f),
    }


def decompose(
    firm: Firm,
    p: Dist,
    q: Dist,
    coarse: SignalStructure,
    fine: SignalStructure,
    kernel: GarblingKernel | None = None,
    tie_break: str = "lowest",
    tol: float | None = None,
) -> DecompResult:
    """Split the coarse-to-fine pay change for one firm and population.

    ``kernel`` may be supplied when the caller already holds a witness;
    otherwise one is computed, and its absence raises ``OrderingError``.
    """
    kernel = _resolve_kernel(fine, coarse, kernel, tol)
    parts = _core(firm, p, q, coarse, fine, kernel, tie_break)
    return DecompResult(
        total=parts["w_fine"] - parts["w_coarse"],
        perception_correcting=parts["correction"],
        instrumental=parts["inst_joint"],
        kernel=kernel,
        assignment_coarse=parts["assign_coarse"],
        assignment_fine=parts["assign_fine"],
    )


def perception_correcting(
    firm: Firm,
    p: Dist,
    q: Dist,
    coarse: SignalStructure,
    fine: SignalStructure,
    kernel: GarblingKernel,
    tie_break: str = "lowest",
    tol: float | None = None,
) -> Number:
    """Frequency-reweighting part of the gain, coarse assignment held."""
    kernel = _resolve_kernel(fine, coarse, kernel, tol)
    return _core(firm, p, q, coarse, fine, kernel, tie_break)["correction"]


def instrumental(
    firm: Firm,
    p: Dist,
    q: Dist,
    coarse: SignalStructure,
    fine: SignalStructure,
    kernel: GarblingKernel,
    form: str = "joint",
    tie_break: str = "lowest",
    tol: float | None = None,
) -> Number:
    """Reassignment part of the gain.

    ``form`` selects between the two algebraically equal published
    expressions: ``"joint"`` sums over linked signal pairs,
    ``"signalwise"`` folds the kernel into the coarse task first.  Their
    agreement is itself a tested claim.
    """
    if form not in ("joint", "signalwise"):
        raise InputError(f"unknown instrumental form {form!r}")
    kernel = _resolve_kernel(fine, coarse, kernel, tol)
    parts = _core(firm, p, q, coarse, fine, kernel, tie_break)
    return parts["inst_joint" if form == "joint" else "inst_signalwise"]


@dataclass(frozen=True)
class SignReport:
    """Hypotheses and signed conclusions for one decomposition."""

    monotone: bool
    fine_mlr: bool
    perception: PerceptionClass
    instrumental_ok: bool
    correction_sign_required: str | None  # "nonneg", "nonpos", "zero", None
    correction_sign_ok: bool | None
    result: DecompResult

    @property
    def ok(self) -> bool:
        """No applicable claim is violated."""
        if not self.instrumental_ok:
            return False
        return self.correction_sign_ok is not False

    def summary(self) -> str:
        lines = [
            f"monotone firm:          {self.monotone}",
            f"fine structure MLR:     {self.fine_mlr}",
            f"perception:             {self.perception.value}",
            f"total change:           {self.result.total!r}",
            f"perception-correcting:  {self.result.perception_correcting!r}",
            f"instrumental:           {self.result.instrumental!r}",
            f"instrumental >= 0:      {self.instrumental_ok}",
        ]
        if self.correction_sign_required is None:
            lines.append("correction sign:        not applicable")
        else:
            lines.append(
                f"correction {self.correction_sign_required}:     "
                f"{self.correction_sign_ok}"
            )
        return "\n".join(lines)


def check_signs(
    firm: Firm,
    p: Dist,
    q: Dist,
    coarse: SignalStructure,
    fine: SignalStructure,
    kernel: GarblingKernel | None = None,
    tie_break: str = "lowest",
    tol: float | None = None,
) -> SignReport:
    """Evaluate the signed claims on one instance.

    The nonnegativity of the instrumental part is hypothesis-free and
    always checked.  The sign of the perception-correcting part is only
    required when the firm is monotone, the fine structure is MLR, and
    the perception is LR-comparable to the truth.
    """
    result = decompose(firm, p, q, coarse, fine, kernel, tie_break, tol)
    exact = all_exact(
        (result.total, result.perception_correcting, result.instrumental)
    )
    floor = 0 if exact else INSTRUMENTAL_FLOOR
    slack = 0 if exact else (SIGN_TOL if tol is None else tol)
    monotone = firm.is_monotone
    fine_mlr = False if fine.values is None else is_mlr(fine)
    pclass = perception_class(p, q)
    required: str | None = None
    sign_ok: bool | None = None
    if monotone and fine_mlr:
        c = result.perception_correcting
        if pclass is PerceptionClass.ACCURATE:
            required, sign_ok = "zero", bool(-slack <= c <= slack)
        elif pclass is PerceptionClass.UNDER_PERCEIVED:
            required, sign_ok = "nonneg", bool(c >= -slack)
        elif pclass is PerceptionClass.OVER_PERCEIVED:
            required, sign_ok = "nonpos", bool(c <= slack)
    return SignReport(
        monotone=monotone,
        fine_mlr=fine_mlr,
        perception=pclass,
        instrumental_ok=bool(result.instrumental >= floor),
        correction_sign_required=required,
        correction_sign_ok=sign_ok,
        result=result,
    )
