import json
import subprocess
import sys

import jsonschema
import pytest

from squarezero.cli import REPORT_SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    return code, report


def dims(report):
    return [e["free_rank"] for e in report["results"]]


def test_compute_examples(capsys):
    code, report = run_json(capsys, "compute", "--r", "1", "--ring", "Q", "--max-q", "3")
    assert code == 0 and dims(report) == [2, 1, 1, 1]
    _, report = run_json(capsys, "compute", "--r", "1", "--ring", "F2", "--max-q", "3")
    assert dims(report) == [2, 2, 2, 2]
    _, report = run_json(capsys, "compute", "--r", "2", "--ring", "Z", "--max-q", "0")
    assert dims(report) == [3]
    assert report["meta"] == {"command": "compute", "ring": "Z", "r": 2, "version": "0.1.0",
                              "seed": report["meta"]["seed"], "passed": True,
                              "ring_kinds": ["Z", "Q", "F<p>", "Z/<n>"]}


def test_compute_breakdown(capsys):
    _, report = run_json(capsys, "compute", "--r", "1", "--ring", "Z", "--max-q", "1")
    q1 = report["results"][1]
    assert q1["free_rank"] == 1 and q1["torsion"] == ["2"]
    cases = {s["word"]: (s["period"], s["case"], s["modules"][0]["torsion"]) for s in q1["summands"]}
    assert cases == {"1": (1, 2, []), "1,1": (1, 3, ["2"])}


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--r", "1", "--ring", "Z", "--max-q", "1")
    assert code == 0
    assert "q=1: Z + Z/2" in out
    assert "[x1,x1]" in out


@pytest.mark.parametrize("argv", [
    ["verify-lemma", "--r", "2", "--max-m", "4", "--ring", "Z/4"],
    ["verify-theorem", "--r", "3", "--ring", "F2"],
    ["oracle", "--r", "2", "--ring", "Q", "--max-q", "3"],
    ["verify-exactness", "--ring", "Z/6"],
    ["necklaces", "--r", "3", "--max-m", "5"],
])
def test_verification_commands_pass(capsys, argv):
    code, report = run_json(capsys, *argv)
    assert code == 0 and report["meta"]["passed"]
    assert report["results"] and all(e["status"] == "PASS" for e in report["results"])


def test_verify_theorem_degrees(capsys):
    _, report = run_json(capsys, "verify-theorem", "--r", "3", "--ring", "F2")
    assert [e["degree"] for e in report["results"]] == [1, 2, 3]


def test_oracle_compares_both_routes(capsys):
    _, report = run_json(capsys, "oracle", "--r", "2", "--ring", "Q", "--max-q", "3")
    rows = [e for e in report["results"] if "degree" in e]
    assert [e["free_rank"] for e in rows] == [3, 3, 5, 8]
    assert all(e["brute_force"]["free_rank"] == e["free_rank"] for e in rows)


def test_word_command(capsys):
    code, report = run_json(capsys, "word", "--word", "1,1", "--ring", "Z/4", "--explain")
    assert code == 0 and report["meta"]["case"] == 3
    by_degree = {e["degree"]: e for e in report["results"]}
    assert by_degree[2]["torsion"] == ["2"] and by_degree[2]["basis"] == ["1⊗x1⊗x1"]
    assert by_degree[2]["differential"] == [[2]]
    assert by_degree[2]["generators"] == [{"order": "2", "cycle": "2*1⊗x1⊗x1"}]
    code, out, _ = run(capsys, "word", "--word", "2,1", "--explain")
    assert "1⊗x1⊗x2" in out and "case 2" in out


@pytest.mark.parametrize("argv,fragment", [
    (["compute", "--r", "1", "--ring", "Z/1", "--max-q", "2"], "position 2"),
    (["compute", "--r", "1", "--ring", "F4", "--max-q", "2"], "position 1"),
    (["compute", "--r", "0", "--max-q", "2"], "positive"),
    (["word", "--word", "1,x"], "position 2"),
    (["word", "--word", "1,3", "--r", "2"], "outside 1..2"),
    (["compute", "--r", "1", "--ring", "Z", "--ring", "Q", "--max-q", "1"], "single --ring"),
    (["frobnicate"], "invalid choice"),
])
def test_parse_errors_exit_2(capsys, argv, fragment):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    err = capsys.readouterr().err
    assert code == 2
    assert fragment in err


def test_budget_exit_3(capsys):
    code, out, err = run(capsys, "oracle", "--r", "3", "--max-q", "6")
    assert code == 3 and out == "" and "budget" in err
    code, _, err = run(capsys, "compute", "--r", "3", "--max-q", "9", "--budget", "100")
    assert code == 3 and "necklaces" in err
    code, _, _ = run(capsys, "oracle", "--r", "2", "--max-q", "3", "--ring", "Q", "--budget", "100")
    assert code == 3


def test_determinism(capsys):
    argv = ["oracle", "--r", "2", "--max-q", "2", "--seed", "7", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and json.loads(first)["meta"]["seed"] == 7


def test_json_round_trip_every_command(capsys):
    for argv in (["compute", "--r", "2", "--max-q", "3"], ["word", "--word", "1,2,1,2"],
                 ["necklaces", "--r", "2", "--max-m", "3"], ["verify-exactness", "--max-period", "3"]):
        _, report = run_json(capsys, *argv)
        again = json.loads(json.dumps(report))
        jsonschema.validate(again, REPORT_SCHEMA)
        assert again == report


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "squarezero", "compute", "--r", "1", "--max-q", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "q=0: Z^2" in proc.stdout
