import json
import subprocess
import sys

import jsonschema
import pytest

from operadiff.cli import main
from operadiff.report import REPORT_SCHEMA
from conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_differentiate(capsys):
    assert run(capsys, "differentiate", "--operad", "com", "x^2") == (0, "2*x*dx\n", "")
    code, out, _ = run(capsys, "differentiate", "--operad", "lie", "[x,y]")
    assert code == 0 and out == "[x,dy] - [y,dx]\n"


def test_derivations_of_dual_numbers(capsys):
    code, out, _ = run(capsys, "derivations", "--algebra", "dualnumbers.toml")
    assert (code, out) == (0, "dim Der = 1; basis: D(x)=x\n")
    code, out, _ = run(capsys, "derivations", "--algebra", str(DATA / "dualnumbers.toml"))
    assert (code, out) == (0, "dim Der = 1; basis: D(x)=x\n")


def test_check_dc_passes(capsys):
    code, out, _ = run(capsys, "check-dc", "--operad", "lie", "--arity", "3", "--trials", "20", "--seed", "7")
    assert code == 0
    assert out.splitlines()[-1].startswith("PASS")


def test_compose_with_chain_rule(capsys):
    code, out, _ = run(capsys, "compose", "--operad", "com", "--f", "x^2", "--g", "y^2", "--diff")
    assert code == 0
    assert "g.f = (x^4)" in out and "D[g.f] = (4*x^3*dx)" in out and "D[g].<f, D[f]> = (4*x^3*dx)" in out


def test_kahler_and_adjoint_tangent(capsys):
    code, out, _ = run(capsys, "kahler", "--algebra", "dual")
    assert code == 0 and out.startswith("dim Omega = 1")
    code, out, _ = run(capsys, "adjoint-tangent", "--algebra", "cubic", "--weight", "4")
    assert code == 0 and "degree 2: dim 2" in out


@pytest.mark.parametrize("argv", [
    ["differentiate", "--operad", "com", "x^^2"],
    ["differentiate", "--operad", "lie", "x*y"],
    ["differentiate", "--operad", "quux", "x"],
    ["derivations", "--algebra", "missing.toml"],
    ["bogus"],
    ["compose", "--operad", "com", "--f", "x", "--f", "y", "--g", "y^2"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_violations_exit_1(capsys):
    code, _, err = run(capsys, "check-algebra", "--algebra", str(DATA / "nonassoc_bad.toml"))
    assert code == 1 and "associativity" in err
    code, out, _ = run(capsys, "check-algebra", "--algebra", str(DATA / "nonassoc_bad.toml"), "--no-verify")
    assert code == 1 and "counterexample" in out


@pytest.mark.parametrize("argv", [
    ["check-dc", "--operad", "ass", "--arity", "3", "--trials", "10"],
    ["check-lambda", "--operad", "com", "--arity", "3", "--trials", "10"],
    ["check-cdc", "--operad", "lie", "--trials", "5"],
    ["tangent-check", "--algebra", "ut2", "--morphisms", "2"],
    ["check-adjunction", "--algebra", "dual"],
    ["diff-object", "--algebra", "borel"],
    ["derivations", "--algebra", "cubic", "--check"],
])
def test_json_reports_validate_and_are_reproducible(capsys, argv):
    code1, out1, _ = run(capsys, *argv, "--json")
    code2, out2, _ = run(capsys, *argv, "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    jsonschema.validate(json.loads(out1), REPORT_SCHEMA)


def test_failing_json_report_has_counterexample(capsys):
    code, out, _ = run(capsys, "check-algebra", "--algebra", str(DATA / "nonassoc_bad.toml"), "--no-verify", "--json")
    d = json.loads(out)
    jsonschema.validate(d, REPORT_SCHEMA)
    bad = [c for c in d["checks"] if c["status"] == "fail"]
    assert code == 1 and bad and all("counterexample" in c for c in bad)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "operadiff.cli", "differentiate", "--operad", "ass", "x*y"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "dx*y + x*dy\n"
