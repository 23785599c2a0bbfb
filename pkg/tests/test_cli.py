"""Exit codes, flag handling, and output shape of the command line."""

from fractions import Fraction

import pytest

from infopay.cli import main
from infopay.instancefile import save_instance
from infopay.model import Dist, Firm, SignalStructure, SkillSpace, Task


def make_scenario(coarse_acc=Fraction(9, 13), fine_acc=Fraction(4, 5)):
    from infopay.discrimination import GapScenario

    space = SkillSpace((0, 1))

    def sym(lam):
        return SignalStructure(
            space, ("s0", "s1"), ((lam, 1 - lam), (1 - lam, lam)), values=(0, 1)
        )

    return GapScenario(
        firm=Firm((Task((0, 1)), Task((-4, 4)))),
        p=Dist(space, (Fraction(1, 2), Fraction(1, 2))),
        q_i=Dist(space, (Fraction(1, 4), Fraction(3, 4))),
        q_j=Dist(space, (Fraction(3, 4), Fraction(1, 4))),
        coarse=sym(coarse_acc),
        fine=sym(fine_acc),
    )


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "showcase.inst"
    save_instance(make_scenario(), str(path))
    return str(path)


def test_example_pass(capsys):
    assert main(["example", "ex1-reversal"]) == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out
    assert "total change: -1/4" in out


def test_example_override(capsys):
    assert main(["example", "ex3-mlr-fail", "--delta=-1/50"]) == 0
    assert "1/150" in capsys.readouterr().out


def test_example_unknown_name(capsys):
    assert main(["example", "nope"]) == 2
    assert "unknown example" in capsys.readouterr().err


def test_example_wrong_flag_for_example(capsys):
    assert main(["example", "ex1-reversal", "--delta", "1/50"]) == 2
    assert "does not take parameter" in capsys.readouterr().err


def test_mode_flag_both_positions(capsys):
    assert main(["--mode", "float", "example", "ex1-reversal"]) == 0
    assert "mode: float" in capsys.readouterr().out
    assert main(["example", "ex1-reversal", "--mode", "float"]) == 0
    assert "mode: float" in capsys.readouterr().out


def test_sweep_stdout(capsys):
    assert main(["sweep-figure1", "--grid", "1/2:1:1/4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "λ,W_I,W_J,gap,task_I_s0,task_I_s1,task_J_s0,task_J_s1"
    assert len(lines) == 4
    assert lines[1].startswith("1/2,2,1/4,7/4,")


def test_sweep_to_file(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    assert main(["sweep-figure1", "--grid", "1/2:1:1/4", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    text = out.read_text(encoding="utf-8")
    assert text.startswith("λ,W_I,W_J,gap,")
    assert text.endswith("\n") and "\r" not in text


def test_sweep_bad_grid(capsys):
    assert main(["sweep-figure1", "--grid", "0:1:1/10"]) == 2
    assert "grid" in capsys.readouterr().err


def test_suite_pass(capsys):
    assert main(["suite", "prop2"]) == 0
    out = capsys.readouterr().out
    assert "prng: numpy:PCG64" in out
    assert out.rstrip().endswith("result: PASS")


def test_suite_unknown(capsys):
    assert main(["suite", "nothere"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_suite_bad_trials(capsys):
    assert main(["suite", "orders", "--trials", "0"]) == 2


def test_check_claims_pass(scenario_file, capsys):
    for claim in ("invariants", "theorem1", "corollary2", "narrowing"):
        assert main(["check", scenario_file, "--claim", claim]) == 0
        out = capsys.readouterr().out
        assert out.startswith(f"claim: {claim}\n")
        assert out.rstrip().endswith("result: PASS")


def test_check_nearly_full_violation(scenario_file, capsys):
    code = main(
        ["check", scenario_file, "--claim", "nearly-full", "--eps", "1/4"]
    )
    assert code == 1
    assert capsys.readouterr().out.rstrip().endswith("result: FAIL")


def test_check_nearly_full_needs_eps(scenario_file, capsys):
    assert main(["check", scenario_file, "--claim", "nearly-full"]) == 2
    assert "--eps" in capsys.readouterr().err


def test_check_eps_rejected_elsewhere(scenario_file, capsys):
    code = main(
        ["check", scenario_file, "--claim", "narrowing", "--eps", "1/4"]
    )
    assert code == 2


def test_check_unordered_structures(tmp_path, capsys):
    # fine strictly coarser than coarse: no garbling kernel exists
    path = tmp_path / "swapped.inst"
    save_instance(
        make_scenario(coarse_acc=Fraction(4, 5), fine_acc=Fraction(9, 13)),
        str(path),
    )
    assert main(["check", str(path), "--claim", "narrowing"]) == 2
    assert "not more informative" in capsys.readouterr().err


def test_check_wrong_instance_kind(tmp_path, capsys):
    path = tmp_path / "firm.inst"
    save_instance(Firm((Task((0, 1)),)), str(path))
    assert main(["check", str(path), "--claim", "theorem1"]) == 2
    assert "scenario" in capsys.readouterr().err


def test_check_parse_error(tmp_path, capsys):
    path = tmp_path / "broken.inst"
    path.write_text("[firm]\n1 2\n0\n", encoding="utf-8")
    assert main(["check", str(path), "--claim", "invariants"]) == 2


def test_check_missing_file(capsys):
    assert main(["check", "/nonexistent/x.inst", "--claim", "invariants"]) == 2


def test_argparse_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["check", "somefile"])  # missing --claim
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--tol", "-1", "example", "ex1-reversal"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_float_mode_check(scenario_file, capsys):
    code = main(
        ["--mode", "float", "check", scenario_file, "--claim", "theorem1"]
    )
    assert code == 0
    assert "result: PASS" in capsys.readouterr().out
