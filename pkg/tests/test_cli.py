"""End-to-end runs of the command line through ``main(argv)``."""

import json
import subprocess
import sys

import pytest

from defekt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_gadget_example(capsys):
    code, out = run(capsys, "gadget", "gsn", "2", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "5 4"
    assert len(lines) == 5  # header plus the four star edges


def test_gadget_formats(capsys):
    code, out = run(capsys, "gadget", "cycle", "4", "--format", "dimacs")
    assert code == 0
    assert out.startswith("p edge 4 4")
    code, out = run(capsys, "gadget", "cycle", "4", "--format", "json")
    assert json.loads(out) == {
        "n": 4, "edges": [[0, 1], [0, 3], [1, 2], [2, 3]]
    }


def test_bounds_earth_moon_both_spellings(capsys):
    code, via_arg = run(capsys, "bounds", "earth-moon")
    assert code == 0
    code, via_flag = run(capsys, "bounds", "--table", "earth-moon")
    assert via_arg == via_flag
    rows = json.loads(via_arg)
    assert [r["colours"] for r in rows] == [5, 6, 7, 8, 9, 10, 11]


def test_bounds_formula_evaluation(capsys):
    code, out = run(
        capsys, "bounds", "n1",
        "--params", '{"s": 2, "t": 48, "delta": "4", "delta1": "4"}',
    )
    assert code == 0
    assert json.loads(out)["value"] == "196"


def test_analyze_stdin_roundtrip(tmp_path, capsys, monkeypatch):
    path = tmp_path / "c6.txt"
    path.write_text("6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n")
    code, out = run(capsys, "analyze", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["mad"] == "2"
    assert payload["degeneracy"] == 2


def test_colour_verify_round_trip(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    graph.write_text("0 1\n1 2\n2 3\n3 0\n")
    code, out = run(capsys, "colour", str(graph), "--mode", "list",
                    "--k", "1", "--ell", "2")
    assert code == 0
    colouring = tmp_path / "c.json"
    colouring.write_text(json.dumps(json.loads(out)["colours"]))
    code, out = run(capsys, "verify", str(graph),
                    "--colouring", str(colouring), "--defect", "1")
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_verify_rejects_bad_colouring(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    graph.write_text("0 1\n1 2\n")
    colouring = tmp_path / "c.json"
    colouring.write_text('{"0": 1, "1": 1, "2": 1}')
    code, out = run(capsys, "verify", str(graph),
                    "--colouring", str(colouring), "--defect", "0")
    assert code == 1
    payload = json.loads(out)
    assert payload["valid"] is False
    assert payload["violations"]


def test_structural_failure_reports_witness(tmp_path, capsys):
    graph = tmp_path / "k4.txt"
    graph.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    code, out = run(capsys, "colour", str(graph), "--mode", "list",
                    "--k", "1", "--ell", "2")
    assert code == 1
    payload = json.loads(out)
    assert payload["error"] == "StructuralError"
    assert payload["witness"]["n"] == 4


def test_witness_round_trips_through_verify(tmp_path, capsys):
    graph = tmp_path / "c4.txt"
    graph.write_text("0 1\n1 2\n2 3\n3 0\n")
    code, out = run(capsys, "detect", str(graph), "--kst-star", "2", "1")
    assert code == 0
    cert = json.loads(out)["kst-star"]
    assert cert is not None
    cert_file = tmp_path / "cert.json"
    cert_file.write_text(json.dumps(cert))
    code, out = run(capsys, "verify", str(graph),
                    "--certificate", str(cert_file), "--s", "2", "--t", "1")
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_usage_errors_exit_two(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    graph.write_text("0 1\n")
    assert run(capsys, "colour", str(graph), "--mode", "list")[0] == 2
    assert run(capsys, "detect", str(graph))[0] == 2
    assert run(capsys, "verify", str(graph))[0] == 2
    assert run(capsys, "experiment", "nope")[0] == 2
    assert run(capsys, "gadget", "nope")[0] == 2
    assert run(capsys, "gadget", "cycle")[0] == 2
    assert run(capsys, "bounds", "no-such-formula")[0] == 2


def test_missing_file_is_usage_error(capsys):
    assert run(capsys, "analyze", "/no/such/file")[0] == 2


def test_experiment_json_lines_deterministic(capsys):
    code, first = run(capsys, "experiment", "dichotomy-random",
                      "--count", "6", "--seed", "5")
    assert code == 0
    code, second = run(capsys, "experiment", "dichotomy-random",
                       "--count", "6", "--seed", "5")
    assert first == second
    for line in first.strip().splitlines():
        row = json.loads(line)
        assert row["pass"] is True


def test_experiment_formats(capsys):
    code, out = run(capsys, "experiment", "earth-moon-table",
                    "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "actual,check_id,claim_id,expected,inputs,pass"
    code, out = run(capsys, "experiment", "earth-moon-table",
                    "--format", "text")
    assert all(line.startswith("PASS") for line in out.strip().splitlines())


def test_cap_override(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("DEFEKT_CAPS", raising=False)
    graph = tmp_path / "c13.txt"
    edges = [(i, (i + 1) % 13) for i in range(13)]
    graph.write_text("".join(f"{u} {v}\n" for u, v in edges))
    pattern = tmp_path / "k3.txt"
    pattern.write_text("0 1\n1 2\n0 2\n")
    code, _ = run(capsys, "detect", str(graph), "--minor", str(pattern),
                  "--cap", "minor_host=12")
    assert code == 2
    code, out = run(capsys, "detect", str(graph), "--minor", str(pattern),
                    "--cap", "minor_host=13")
    assert code == 0
    assert json.loads(out)["minor"] is not None


def test_cap_override_bad_pairs(capsys):
    assert run(capsys, "bounds", "earth-moon", "--cap", "minor_host")[0] == 2
    assert run(capsys, "bounds", "earth-moon", "--cap", "minor_host=x")[0] == 2
    assert run(capsys, "bounds", "earth-moon", "--cap", "bogus=3")[0] == 2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["bounds", "earth-moon", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    assert json.loads(target.read_text())[0]["colours"] == 5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "defekt.cli", "gadget", "petersen"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "10 15"
