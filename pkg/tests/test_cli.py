import json
import subprocess
import sys

import pytest

from qeuler.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_numbers_table(capsys):
    code, out, _ = run(capsys, "numbers", "--m-max", "2", "--h", "1", "--k", "1", "--q", "1/2")
    assert code == 0
    assert [line.split() for line in out.splitlines()] == [["0", "1/1"], ["1", "-2/5"], ["2", "-4/15"]]


def test_numbers_single_value(capsys):
    code, out, _ = run(capsys, "numbers", "--m-max", "0", "--h", "2", "--k", "1", "--q", "1/2")
    assert code == 0 and out.split() == ["0", "6/5"]


def test_numbers_formats(capsys):
    _, out, _ = run(capsys, "numbers", "--m-max", "1", "--q", "1/2", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[1] == {"m": 1, "h": 1, "k": 1, "q": "1/2", "value": "-2/5"}
    _, out, _ = run(capsys, "numbers", "--m-max", "1", "--q", "1/2", "--format", "csv")
    assert out == "m,value\n0,1/1\n1,-2/5\n"


@pytest.mark.parametrize("q", ["1", "0", "-1", "1/0", "abc"])
def test_numbers_bad_q(capsys, q):
    code, _, err = run(capsys, "numbers", "--q", q)
    assert code == 2
    assert "q" in err


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "--m-max", "1", "--q", "1/2", "--x", "1", "--format", "csv")
    assert code == 0 and out == "m,value\n0,1/1\n1,4/5\n"
    code, out2, _ = run(capsys, "poly", "--m-max", "1", "--q", "1/2", "--tau", "1/2", "--format", "csv")
    assert out2 == out
    code, _, err = run(capsys, "poly", "--q", "1/2", "--tau", "0")
    assert code == 2 and "tau" in err


def test_verify_filter_and_output(capsys, tmp_path):
    path = tmp_path / "r.jsonl"
    code, _, err = run(capsys, "verify", "--id", "E33", "--output", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines and all(json.loads(l)["id"] == "E33" for l in lines)
    assert "0 failed" in err


def test_verify_literal_fails_with_note(capsys):
    code, out, err = run(capsys, "verify", "--id", "E14-literal")
    assert code == 1
    assert "erratum" in err and "[2]_q" in err
    assert any(not json.loads(l)["pass"] for l in out.splitlines())


def test_verify_unknown_id(capsys):
    code, _, err = run(capsys, "verify", "--id", "NOPE")
    assert code == 2 and "id" in err


def test_verify_empty_grid(capsys):
    code, _, err = run(capsys, "verify", "--id", "E33", "--q", "1")
    assert code == 2 and "q" in err


def test_verify_grid_override(capsys):
    code, out, _ = run(capsys, "verify", "--id", "E12", "--m-max", "1", "--q", "2")
    assert code == 0
    params = [json.loads(l)["params"] for l in out.splitlines()]
    assert {p["m"] for p in params} == {0, 1} and {p["q"] for p in params} == {"2/1"}


def test_integrate_unit_mass(capsys):
    code, out, _ = run(capsys, "integrate", "--m", "0", "--h", "1", "--k", "1", "--p", "3",
                       "--q", "4", "--N", "1..3", "--stable")
    assert code == 0
    assert out == "N,terms,valuation\n1,3,inf\n2,9,inf\n3,27,inf\n"


def test_integrate_inadmissible(capsys):
    code, _, err = run(capsys, "integrate", "--q", "2", "--p", "3")
    assert code == 2 and "q" in err


def test_integrate_budget(capsys, monkeypatch):
    code, _, err = run(capsys, "integrate", "--k", "3", "--p", "3", "--q", "4", "--N", "5")
    assert code == 3 and "budget" in err
    monkeypatch.setenv("QEULER_BUDGET", "5")
    code, _, _ = run(capsys, "integrate", "--p", "3", "--q", "4", "--N", "2")
    assert code == 3
    monkeypatch.setenv("QEULER_BUDGET", "-5")
    code, _, err = run(capsys, "integrate", "--p", "3", "--q", "4", "--N", "2")
    assert code == 2 and "QEULER_BUDGET" in err


@pytest.mark.parametrize(
    "argv, key",
    [
        (["--p", "4"], "p"),
        (["--d", "3"], "d"),
        (["--d", "2"], "d"),
        (["--N", "0..2"], "N"),
        (["--mode", "bosonic"], "target"),
        (["--k", "0"], "k"),
    ],
)
def test_integrate_invalid(capsys, argv, key):
    code, _, err = run(capsys, "integrate", "--q", "4", *argv)
    assert code == 2 and key in err


def test_integrate_bosonic_with_target(capsys):
    code, out, _ = run(capsys, "integrate", "--mode", "bosonic", "--target", "1", "--q", "4",
                       "--N", "1..2", "--stable")
    assert code == 0 and out.endswith("1,3,inf\n2,9,inf\n")


def test_zeta_value(capsys):
    code, out, _ = run(capsys, "zeta", "--s", "0", "--x", "1", "--q", "0.5", "--h", "1")
    assert code == 0 and out.splitlines()[0] == "1.0"


def test_zeta_interpolation(capsys):
    code, out, _ = run(capsys, "zeta", "--s", "-1", "--x", "1", "--q", "0.5", "--h", "1",
                       "--check-interpolation")
    assert code == 0
    diff = float(out.splitlines()[-1].split("diff=")[1])
    assert diff < 1e-12


def test_zeta_json_and_mellin(capsys):
    code, out, _ = run(capsys, "zeta", "--s", "2", "--q", "0.5", "--mellin", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["mellin"]["pass"] and rec["mellin"]["abs_diff"] < 1e-6


def test_zeta_complex_csv(capsys):
    code, out, _ = run(capsys, "zeta", "--s", "1+2j", "--q", "0.3+0.2j", "--x", "0.5", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("s_re,s_im")


@pytest.mark.parametrize(
    "argv, key",
    [
        (["--s", "1", "--q", "1.5"], "q"),
        (["--s", "1", "--q", "0.5", "--x", "2"], "x"),
        (["--s", "1", "--q", "0.5", "--h", "0"], "h"),
        (["--s", "1", "--q", "0.5", "--check-interpolation"], "s"),
        (["--s", "-1", "--q", "0.5", "--mellin"], "s"),
        (["--s", "x", "--q", "0.5"], "s"),
        (["--s", "1", "--q", "0.5", "--eps", "0"], "eps"),
    ],
)
def test_zeta_invalid(capsys, argv, key):
    code, _, err = run(capsys, "zeta", *argv)
    assert code == 2 and key in err


def test_truncation_is_a_budget_failure(capsys):
    code, _, _ = run(capsys, "zeta", "--s", "1", "--q", "0.99", "--max-terms", "5")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qeuler", "numbers", "--m-max", "0", "--q", "1/2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.split() == ["0", "1/1"]


def test_missing_command_exits_2():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
