import json

import pytest

from cliffinv import cli
from cliffinv.qspace import QuadForm


def test_parse_form_spec():
    assert cli.parse_form_spec("1,-1,2") == QuadForm.of(1, -1, 2)
    assert cli.parse_form_spec(" 1/2 , 3") == QuadForm.of("1/2", 3)


def test_parse_form_spec_errors_carry_positions():
    with pytest.raises(cli.CliError, match="position 2: zero coefficient"):
        cli.parse_form_spec("1,0,2")
    with pytest.raises(cli.CliError, match="position 4"):
        cli.parse_form_spec("1,2,x")


def test_parse_sym_spec():
    sigma = cli.parse_sym_spec("+-+", 3)
    assert sigma.s == 1
    with pytest.raises(cli.CliError, match="length"):
        cli.parse_sym_spec("+-", 3)
    with pytest.raises(cli.CliError, match="position 1"):
        cli.parse_sym_spec("+*+", 3)


def test_parse_factors():
    factors = cli.parse_factors("1,2,s;-3,5,o")
    assert [(str(a), str(b), m) for a, b, m in factors] == [("1", "2", "s"), ("-3", "5", "o")]
    with pytest.raises(cli.CliError):
        cli.parse_factors("1,2")


def run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_predict(capsys):
    code, report = run_json(capsys, "predict", "--n", "6", "--s", "3")
    assert code == 0
    assert report["schema"] == "report/1" and report["outputs"]["type"] == "orthogonal"
    assert set(report) == {"schema", "command", "inputs", "outputs", "checks", "seed", "elapsed_ms"}


def test_z_report(capsys):
    code, report = run_json(capsys, "z", "--form", "2,3", "--sym", "++")
    assert code == 0
    assert report["outputs"]["z_squared"] == "-6"
    assert all(c["status"] == "pass" for c in report["checks"])


def test_symmetry_values_starting_with_a_dash(capsys):
    code, report = run_json(capsys, "decompose", "--form", "1,2", "--sym", "-+",
                            "--form2", "3", "--sym2", "-")
    assert code == 0 and report["outputs"]["certificate"]["checks"]["bijective"]["status"] == "pass"


@pytest.mark.parametrize("argv", [
    ["mul", "--form", "2,3", "--x", "e1", "--y", "e2"],
    ["involve", "--form", "1,2", "--sym", "+-", "--x", "1 + e1^e2", "--y", "e1"],
    ["type", "--form", "1,2,3", "--mode", "even"],
    ["type", "--form", "1,1,1,1", "--sym", "+-++"],
    ["realize", "--a", "2", "--b", "-3", "--mode", "orthogonal_id"],
    ["compose", "--form", "1", "--sym", "-", "--form2", "3,5", "--mode", "even"],
    ["even-reduce", "--form", "1,1,1", "--pivot", "2"],
    ["synth", "--factors", "1,2,s;3,5,o", "--mode", "minus"],
    ["second-kind", "--a", "-1", "--b", "-1", "--c", "2"],
    ["unitary-synth", "--factors", "2,3", "--c", "5"],
])
def test_subcommands_pass(capsys, argv):
    code, report = run_json(capsys, *argv)
    assert code == 0, report["checks"]
    assert report["command"] == argv[0]


def test_mul_output(capsys):
    _, report = run_json(capsys, "mul", "--form", "2,3", "--x", "e1", "--y", "-6 + 2 e1^e2")
    assert report["outputs"]["product"] == "-6 e1 + 4 e2"


def test_errors_exit_with_status_2(capsys):
    assert cli.main(["z", "--form", "1,0,2"]) == 2
    assert "degenerate" in capsys.readouterr().err
    assert cli.main(["type", "--form", ",".join(["1"] * 9)]) == 2
    assert cli.main(["type", "--form", ",".join(["1"] * 9), "--max-dim", "9", "--mode", "even"]) == 0
    assert cli.main(["predict", "--n", "3", "--s", "1"]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_failing_check_sets_exit_status(capsys, monkeypatch):
    def broken(seed):
        return [{"name": "forced", "status": "fail", "witness": "test"}]
    monkeypatch.setattr(cli, "CRITERIA", {1: ("forced failure", broken)})
    monkeypatch.setattr(cli, "run_criterion", lambda number, seed: broken(seed))
    code, report = run_json(capsys, "suite")
    assert code == 1 and report["outputs"]["totals"] == {"passed": 0, "failed": 1}


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert cli.main(["predict", "--n", "2", "--s", "0", "--out", str(target)]) == 0
    capsys.readouterr()
    assert json.loads(target.read_text())["outputs"]["type"] == "orthogonal"


def test_text_rendering(capsys):
    assert cli.main(["z", "--form", "2,3"]) == 0
    out = capsys.readouterr().out
    assert "z_squared: -6" in out and "4/4 checks passed" in out
