import json
import subprocess
import sys

import pytest

from conftest import context
from weakhopf.cli import main
from weakhopf.crossed import DSL_FORMS, nabla_map
from weakhopf.linalg import FieldSpec, Matrix


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_check_groupoid_algebra(capsys):
    code, out = run(capsys, "check", "fixture:indiscrete-groupoid-hopf")
    assert code == 0
    assert out["valid"] is True and out["cocommutative"] is True
    code, out = run(capsys, "check", "fixture:indiscrete-groupoid")
    assert code == 0 and out["kind"] == "groupoid"


def test_check_module_algebra(capsys):
    code, out = run(capsys, "check", "fixture:indiscrete2-F3-translation")
    assert code == 0 and out["valid"] and out["level"] == "strict"


def test_check_reports_the_failing_axiom(capsys, tmp_path):
    H = context("z2-F3-trivial").H
    obj = H.to_json(raw=True)
    obj["lambda"] = [["1", "0"], ["0", "0"]]
    code, out = run(capsys, "check", write(tmp_path, "bad.json", obj))
    assert code == 1 and out["valid"] is False
    assert "a4-1" in out["failures"]


def test_check_reports_a_failing_action(capsys, tmp_path):
    M = context("indiscrete2-F3-translation")
    obj = M.to_json()
    obj["phi"] = [["1"] * 8, ["0"] * 8]
    code, out = run(capsys, "check", write(tmp_path, "bad.json", obj))
    assert code == 1 and out["failures"]


def test_classify_z2(capsys):
    code, out = run(capsys, "classify", "fixture:z2-F3-trivial")
    assert code == 0
    assert (out["class_count"], out["h2_order"], out["bijection_ok"]) == (2, 2, True)


def test_cohomology(capsys):
    code, out = run(capsys, "cohomology", "fixture:z2-F3-trivial")
    assert code == 0 and out["order"] == 2
    code, out = run(capsys, "cohomology", "fixture:z2-F3-trivial", "--degree", "1", "--full")
    assert code == 0 and out["order"] == 2 and out["normalized"] is False


def test_field_override(capsys):
    code, out = run(capsys, "--field", "Fp:2", "cohomology", "fixture:z2-F3-trivial")
    assert code == 0 and out["order"] == 1
    code, out = run(capsys, "--field", "Fp:4", "cohomology", "fixture:z2-F3-trivial")
    assert code == 2


def test_crossed(capsys):
    code, out = run(capsys, "crossed", "fixture:z2-F3-trivial", "fixture:sigma-z2-F3-nontrivial")
    assert code == 0 and out["valid"] and out["comodule_algebra"]
    assert out["dims"] == {"AtensorH": 2, "AtimesH": 2}
    code, out = run(capsys, "crossed", "fixture:indiscrete2-F3-translation", "fixture:sigma-unit")
    assert code == 0 and out["dims"] == {"AtensorH": 8, "AtimesH": 4}


def test_crossed_with_a_non_cocycle(capsys, tmp_path):
    sigma = write(tmp_path, "s.json", {"degree": 2, "matrix": [["1", "1", "2", "1"]]})
    code, out = run(capsys, "crossed", "fixture:z2-F3-trivial", sigma)
    assert code == 1 and out["failed"] == "cocycle"


def test_equiv(capsys):
    code, out = run(capsys, "equiv", "fixture:z2-F3-trivial", "fixture:sigma-unit", "fixture:sigma-z2-F3-nontrivial")
    assert code == 0 and out["equivalent"] is False
    code, out = run(capsys, "equiv", "fixture:z2-F3-trivial", "fixture:sigma-unit", "fixture:sigma-unit")
    assert code == 0 and out["equivalent"] is True
    assert out["omega"] == [["1", "0"], ["0", "1"]]


def test_eval_nabla_matches_the_construction(capsys):
    code, out = run(capsys, "eval", "fixture:indiscrete2-F3-translation", DSL_FORMS["nabla"])
    assert code == 0
    F3 = FieldSpec.fp(3)
    assert Matrix.from_json(F3, out["matrix"]) == nabla_map(context("indiscrete2-F3-translation")).mat
    assert (out["dom"], out["cod"]) == (8, 8)


def test_eval_with_sigma(capsys):
    code, out = run(capsys, "eval", "fixture:z2-F3-trivial", "sigma o (eta * id[H])",
                    "--sigma", "fixture:sigma-z2-F3-nontrivial")
    assert code == 0 and out["matrix"] == [["1", "1"]]


def test_eval_errors(capsys):
    code, out = run(capsys, "eval", "fixture:z2-F3-trivial", "mu o")
    assert code == 2 and out["error"] == "DslSyntaxError"
    code, out = run(capsys, "eval", "fixture:z2-F3-trivial", "mu o mu")
    assert code == 2 and out["error"] == "TypeMismatch"


def test_io_errors(capsys, tmp_path):
    code, out = run(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run(capsys, "check", str(bad))
    assert code == 2
    code, out = run(capsys, "classify", "fixture:nope")
    assert code == 2


def test_budget(capsys):
    code, out = run(capsys, "--budget", "10", "cohomology", "fixture:z2-F3-trivial")
    assert code == 2 and out["error"] == "BudgetExceeded"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_console_script_is_deterministic():
    argv = [sys.executable, "-m", "weakhopf.cli", "classify", "fixture:z2-F3-trivial"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["class_count"] == 2
    failing = subprocess.run([sys.executable, "-m", "weakhopf.cli", "check", "/nonexistent.json"],
                             capture_output=True)
    assert failing.returncode == 2
