"""Generated instances satisfy their advertised invariants exactly."""

from fractions import Fraction

from infopay import (
    check_narrowing,
    find_garbling,
    fosd_geq,
    is_mlr,
    kernel_reproduces,
    lr_geq,
)
from infopay.generators import (
    PRNG_ID,
    random_dist,
    random_firm,
    random_garbling_pair,
    random_kernel,
    random_lr_chain,
    random_lr_pair,
    random_mlr_structure,
    random_narrowing_scenario,
    random_non_lr_pair,
    random_signal_structure,
    random_skill_space,
    trial_rng,
)


def all_fractions(values):
    return all(isinstance(v, (int, Fraction)) for v in values)


def test_prng_identifier():
    assert PRNG_ID == "numpy:PCG64"
    assert trial_rng(7, 0).bit_generator.__class__.__name__ == "PCG64"


def test_trial_streams_are_reproducible_and_distinct():
    a = random_dist(trial_rng(3, 5), random_skill_space(trial_rng(3, 5)))
    b = random_dist(trial_rng(3, 5), random_skill_space(trial_rng(3, 5)))
    c = random_dist(trial_rng(3, 6), random_skill_space(trial_rng(3, 6)))
    assert a == b
    assert a != c  # adjacent trials do not share a stream


def test_random_dist_exact_full_support():
    for trial in range(25):
        rng = trial_rng(11, trial)
        space = random_skill_space(rng)
        d = random_dist(rng, space)
        assert sum(d.probs) == 1
        assert d.full_support
        assert all_fractions(d.probs)


def test_random_signal_structure_invariants():
    for trial in range(25):
        rng = trial_rng(13, trial)
        space = random_skill_space(rng)
        sig = random_signal_structure(rng, space)
        for row in sig.likelihood:
            assert sum(row) == 1
            assert all_fractions(row)
        for j in range(sig.n_signals):
            assert any(row[j] > 0 for row in sig.likelihood)


def test_random_mlr_structure_is_mlr():
    for trial in range(25):
        rng = trial_rng(17, trial)
        space = random_skill_space(rng)
        sig = random_mlr_structure(rng, space)
        assert sig.values is not None
        assert is_mlr(sig)


def test_random_lr_pair_ordered():
    for trial in range(25):
        rng = trial_rng(19, trial)
        space = random_skill_space(rng)
        hi, lo = random_lr_pair(rng, space)
        assert lr_geq(hi, lo)
        assert fosd_geq(hi, lo)


def test_random_lr_chain_ordered():
    for trial in range(10):
        rng = trial_rng(23, trial)
        space = random_skill_space(rng)
        chain = random_lr_chain(rng, space, length=3)
        assert lr_geq(chain[0], chain[1])
        assert lr_geq(chain[1], chain[2])
        assert lr_geq(chain[0], chain[2])


def test_random_non_lr_pair_unordered():
    for trial in range(25):
        rng = trial_rng(29, trial)
        space = random_skill_space(rng, min_types=2)
        a, b = random_non_lr_pair(rng, space)
        assert not lr_geq(a, b)


def test_random_garbling_pair_is_ordered():
    for trial in range(15):
        rng = trial_rng(31, trial)
        space = random_skill_space(rng)
        fine, coarse, kernel = random_garbling_pair(rng, space)
        assert kernel_reproduces(kernel, fine, coarse)
        assert find_garbling(fine, coarse) is not None


def test_random_kernel_rows_reachable():
    for trial in range(15):
        rng = trial_rng(37, trial)
        space = random_skill_space(rng)
        sig = random_signal_structure(rng, space)
        kernel = random_kernel(rng, sig.signals, 3)
        for s in range(3):
            assert any(kernel.matrix[s][f] > 0 for f in range(sig.n_signals))
        for f in range(sig.n_signals):
            assert sum(kernel.matrix[s][f] for s in range(3)) == 1


def test_random_narrowing_scenario_within_hypotheses():
    for trial in range(10):
        rng = trial_rng(41, trial)
        scenario, kernel = random_narrowing_scenario(rng)
        report = check_narrowing(scenario, kernel=kernel)
        assert all(report.hypotheses.values()), report.hypotheses
        assert report.baseline_lr
        assert report.star_holds  # the narrowing claim itself
