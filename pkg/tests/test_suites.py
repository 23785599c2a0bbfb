"""Runner behavior and a pass over every suite in both modes."""

from fractions import Fraction

import pytest

from infopay.errors import InputError
from infopay.model import Dist, Population, SkillSpace, uninformative_structure
from infopay.suites import SUITE_NAMES, ClaimStats, SuiteResult, run_suite
from infopay.suites import _Book


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_suite_passes_rational(name):
    res = run_suite(name, trials=25, seed=0, mode="rational")
    assert res.ok, res.render()


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_suite_passes_float(name):
    res = run_suite(name, trials=25, seed=0, mode="float")
    assert res.ok, res.render()


def test_deterministic_given_seed():
    a = run_suite("theorem1", trials=15, seed=7)
    b = run_suite("theorem1", trials=15, seed=7)
    assert a.render() == b.render()


def test_render_format():
    res = run_suite("orders", trials=5, seed=3)
    text = res.render()
    lines = text.splitlines()
    assert lines[0] == "suite: orders"
    assert lines[1] == "prng: numpy:PCG64"
    assert lines[2] == "seed: 3"
    assert lines[3] == "mode: rational"
    assert lines[4] == "trials: 5"
    assert "claim lr-implies-fosd: 5/5 pass" in lines
    assert lines[-1] == "result: PASS"


def test_unknown_suite_rejected():
    with pytest.raises(InputError):
        run_suite("nope")
    with pytest.raises(InputError):
        run_suite("orders", mode="symbolic")
    with pytest.raises(InputError):
        run_suite("orders", trials=0)


def test_prop2_ignores_trial_count():
    res = run_suite("prop2", trials=50, seed=0)
    assert res.trials == 1
    assert res.ok


def test_failure_bookkeeping_and_render():
    space = SkillSpace((0, 1))
    pop = Population(
        Dist(space, (Fraction(1, 2), Fraction(1, 2))),
        Dist(space, (Fraction(1, 4), Fraction(3, 4))),
        uninformative_structure(space),
    )
    book = _Book()
    book.check("always-on", True, 0)
    book.check("always-on", True, 1)
    book.check("sometimes-off", True, 0)
    book.check("sometimes-off", False, 1, carrier=pop, detail="went negative")
    book.check("sometimes-off", False, 2, carrier=pop, detail="later failure")
    res = SuiteResult(
        suite="demo", trials=3, seed=0, mode="rational", prng="numpy:PCG64",
        claims=tuple(book.claims.values()),
    )
    assert not res.ok
    text = res.render()
    assert "claim always-on: 2/2 pass" in text
    assert "claim sometimes-off: 1/3 pass, 2 FAIL" in text
    # only the first failing trial is kept, with its instance attached
    assert "trial 1; went negative" in text
    assert "later failure" not in text
    assert "[population]" in text
    assert text.splitlines()[-1] == "result: FAIL"


def test_claim_stats_attempts():
    c = ClaimStats("x", passes=3, failures=2)
    assert c.attempts == 5
