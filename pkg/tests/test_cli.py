"""CLI behavior: subcommands, formats, exit codes, determinism."""

import json

import pytest

from csforms.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_coeffs_all_pass(capsys):
    code, out = run(capsys, "coeffs", "--k", "8")
    assert code == 0
    assert "checks passed" in out


def test_coeffs_json_schema(capsys):
    code, out = run(capsys, "coeffs", "--k", "3", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["summary"]["failed"] == 0
    payload = report["config"]["payload"]
    assert payload["k"] == 3
    assert {"i": 0, "j": 0, "num": 1, "den": 1} in payload["table"]
    assert all(r["num"] == 0 for r in payload["residuals"])
    assert payload["fiber_constant"] == {"num": 3, "den": 20}


def test_json_determinism(capsys):
    _, out1 = run(capsys, "identities", "--seed", "7", "--json")
    _, out2 = run(capsys, "identities", "--seed", "7", "--json")
    assert out1 == out2


def test_csv_output(capsys):
    code, out = run(capsys, "chern-number", "--csv")
    assert code == 0
    head = out.splitlines()[0]
    assert head == "name,anchor,computed,expected,tolerance,passed"
    assert "chern_number_s2" in out


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _ = run(capsys, "degree", "--json", "--out", str(path))
    assert code == 0
    report = json.loads(path.read_text())
    recs = {r["name"]: r for r in report["records"]}
    assert recs["quaternionic_degrees_pair"]["passed"]
    assert {recs["quaternionic_degrees_pair"]["extra"]["a1"], recs["quaternionic_degrees_pair"]["extra"]["a2"]} == {2, -2}


def test_heterotic_check_cli(capsys):
    code, out = run(capsys, "heterotic-check", "--bundle", "ut_s2", "--points", "5")
    assert code == 0
    assert "heterotic" in out


def test_unknown_bundle_is_usage_error(capsys):
    code = main(["heterotic-check", "--bundle", "no_such_bundle", "--points", "2"])
    assert code == 2


def test_bad_arguments_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["coeffs"])  # missing --k
    assert exc.value.code == 2


def test_tightened_tolerance_fails(capsys):
    # finite differences cannot meet 1e-12, so the run must flag failures
    code, out = run(capsys, "heterotic-check", "--bundle", "ut_s2", "--points", "3", "--tol", "1e-12")
    assert code == 1
    assert "FAIL" in out


def test_algebra_dump(capsys):
    code, out = run(capsys, "algebra", "--dump", "so4", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["config"]["payload"]["dim"] == 6


def test_obstruction_cli(capsys):
    code, out = run(capsys, "obstruction", "--bundle", "ut_s2", "--chain", "cap:pi/3", "--section", "rotational")
    assert code == 0
    assert "obstruction" in out
