import json
import subprocess
import sys

import pytest

from conftest import NATIVE, PDDL
from sgc.cli import main

TINY = str(NATIVE / "tiny.task")
TINY_PLAN = str(NATIVE / "tiny.plan")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compile_native_writes_report(tmp_path, capsys):
    code, out, _ = run(capsys, "compile", "--task", TINY, "--out-dir", str(tmp_path))
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["alpha"] == "8"
    assert (tmp_path / "domain.pddl").exists() and (tmp_path / "problem.pddl").exists()
    assert "alpha 8" in out


def test_compile_is_byte_identical(tmp_path, capsys):
    for sub in ("a", "b"):
        run(capsys, "compile", "--domain", str(PDDL / "rovers-domain.pddl"), "--problem",
            str(PDDL / "rovers-problem.pddl"), "--out-dir", str(tmp_path / sub))
    for name in ("domain.pddl", "problem.pddl", "report.json", "names.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_compile_native_format(tmp_path, capsys):
    code, _, _ = run(capsys, "compile", "--task", TINY, "--out-dir", str(tmp_path), "--format", "native",
                     "--negation-mode", "negative-preconditions", "--order", "utility-desc")
    assert code == 0
    text = (tmp_path / "compiled.task").read_text()
    assert ":neg (p)" in text
    assert json.loads((tmp_path / "report.json").read_text())["ordering"] == ["q", "p"]


def test_validate_soft(capsys):
    code, out, _ = run(capsys, "validate", "--soft", "--task", TINY, "--plan", TINY_PLAN)
    assert code == 0
    assert out.splitlines() == ["cost 3", "utility 5"]


def test_validate_invalid(tmp_path, capsys):
    bad = tmp_path / "bad.plan"
    bad.write_text("(a2)\n")
    code, _, err = run(capsys, "validate", "--task", TINY, "--plan", str(bad))
    assert code == 2 and "not applicable" in err
    bad.write_text("(nosuch)\n")
    assert run(capsys, "validate", "--task", TINY, "--plan", str(bad))[0] == 2


def test_map_plan_both_ways(tmp_path, capsys):
    run(capsys, "compile", "--task", TINY, "--out-dir", str(tmp_path))
    report = str(tmp_path / "report.json")
    ext = tmp_path / "ext.plan"
    code, _, _ = run(capsys, "map-plan", "--task", TINY, "--report", report, "--direction", "extend",
                     "--plan", TINY_PLAN, "--out", str(ext))
    assert code == 0
    assert ext.read_text() == "(a1)\n(a2)\n(sgc--end)\n(sgc--collect-p)\n(sgc--collect-q)\n"
    code, out, _ = run(capsys, "map-plan", "--report", report, "--direction", "strip", "--plan", str(ext))
    assert code == 0 and out == "(a1)\n(a2)\n"


def test_map_plan_with_pddl_names(tmp_path, capsys):
    d, p = str(PDDL / "logistics-domain.pddl"), str(PDDL / "logistics-problem.pddl")
    run(capsys, "compile", "--domain", d, "--problem", p, "--out-dir", str(tmp_path))
    plan = tmp_path / "p.plan"
    plan.write_text("(load pkg1 t1 depot)\n(drive t1 depot market)\n(unload pkg1 t1 market)\n")
    code, out, _ = run(capsys, "map-plan", "--domain", d, "--problem", p, "--report",
                       str(tmp_path / "report.json"), "--names", str(tmp_path / "names.json"),
                       "--direction", "extend", "--plan", str(plan))
    assert code == 0
    assert out.splitlines()[:2] == ["(load_pkg1_t1_depot)", "(drive_t1_depot_market)"]
    assert "(sgc--collect-at-pkg_pkg1_market)" in out.splitlines()


def test_map_plan_detects_wrong_task(tmp_path, capsys):
    run(capsys, "compile", "--task", str(NATIVE / "lamps.task"), "--out-dir", str(tmp_path))
    code, _, err = run(capsys, "map-plan", "--task", TINY, "--report", str(tmp_path / "report.json"),
                       "--direction", "extend", "--plan", TINY_PLAN)
    assert code == 1 and "different task" in err


@pytest.mark.parametrize("algo", ["ucs", "astar-hmax", "brute"])
def test_solve_tiny(capsys, algo):
    code, out, _ = run(capsys, "solve", "--task", TINY, "--algo", algo)
    doc = json.loads(out)
    assert code == 0
    assert doc["plan"] == ["a1", "a2"] and doc["value"] == "5"


def test_solve_plain_task_minimizes_cost(capsys):
    code, out, _ = run(capsys, "solve", "--domain", str(PDDL / "gripper-domain.pddl"),
                       "--problem", str(PDDL / "gripper-problem.pddl"))
    doc = json.loads(out)
    assert code == 0 and doc["objective"] == "cost" and doc["value"] == "3"


def test_solve_unsolvable(tmp_path, capsys):
    task = tmp_path / "t.task"
    task.write_text("(task (fluents p q) (goal p) (action a :pre (q) :add (p)))")
    code, out, _ = run(capsys, "solve", "--task", str(task))
    assert code == 3 and json.loads(out)["plan"] is None


def test_solve_node_limit(capsys):
    code, _, err = run(capsys, "solve", "--domain", str(PDDL / "gripper-domain.pddl"),
                       "--problem", str(PDDL / "gripper-problem.pddl"), "--max-nodes", "2")
    assert code == 4 and "node limit" in err


def test_compiled_output_needs_allow_reserved(tmp_path, capsys):
    run(capsys, "compile", "--task", TINY, "--out-dir", str(tmp_path), "--format", "native")
    compiled = str(tmp_path / "compiled.task")
    assert run(capsys, "solve", "--task", compiled)[0] == 1
    code, out, _ = run(capsys, "solve", "--task", compiled, "--allow-reserved")
    assert code == 0 and json.loads(out)["value"] == "3"


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--seed", "7", "--instances", "20")
    assert code == 0
    assert out.count("PASS") == 4


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frob"],
        ["validate", "--plan", TINY_PLAN],
        ["validate", "--task", "/nonexistent", "--plan", TINY_PLAN],
        ["validate", "--task", TINY, "--domain", "x", "--plan", TINY_PLAN],
        ["solve", "--task", TINY, "--algo", "dfs"],
        ["check", "--instances", "many"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:") and "Traceback" not in err


def test_garbage_input_exits_one(tmp_path, capsys):
    junk = tmp_path / "junk"
    junk.write_bytes(b"\xff\xfe(((")
    code, _, err = run(capsys, "validate", "--task", str(junk), "--plan", TINY_PLAN)
    assert code == 1 and "UTF-8" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sgc", "validate", "--task", TINY, "--plan", TINY_PLAN],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "cost 3\n"
