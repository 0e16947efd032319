import json
import subprocess
import sys

import pytest

from symdg.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, s_list
from symdg.construct import build_gamma
from symdg.digraph import Digraph, strongly_connected
from symdg.exact import RationalMatrix, is_diagonalizable


def test_construct_gamma_json(tmp_path):
    out = tmp_path / "g2.json"
    assert main(["construct", "gamma", "--s", "2", "--format", "json", "--out", str(out)]) == EXIT_OK
    g = Digraph.from_json(out.read_text())
    assert g.n == 16 and g.valency() == 2
    manifest = json.loads((tmp_path / "g2.json.manifest.json").read_text())
    assert manifest["s"] == 2 and manifest["vertices"] == 16 and manifest["power"] == 1
    assert not list(tmp_path.glob(".*"))  # no temp files left behind


def test_round_trip_matches_in_memory(tmp_path):
    json_path, mat_path = tmp_path / "g.json", tmp_path / "g.mat"
    main(["construct", "gamma", "--s", "3", "--out", str(json_path), "--matrix-out", str(mat_path)])
    inst = build_gamma(3)
    loaded = Digraph.from_json(json_path.read_text())
    assert loaded == inst.digraph
    assert strongly_connected(loaded) == strongly_connected(inst.digraph)
    A = RationalMatrix.from_text(mat_path.read_text())
    assert A == inst.digraph.adjacency_matrix()
    assert is_diagonalizable(A) == is_diagonalizable(inst.digraph.adjacency_matrix()) is False


def test_construct_power_and_formats(tmp_path, capsys):
    assert main(["construct", "gamma", "--s", "2", "--power", "2", "--format", "matrix"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "256 256" and len(lines) == 257
    assert all(row.split().count("1") == 4 for row in lines[1:])
    assert main(["construct", "gamma", "--s", "2", "--format", "dot", "--labels"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph G {")
    assert main(["construct", "gamma", "--s", "2", "--format", "text"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("16 vertices, 32 arcs")


def test_construct_sigma_matrix(tmp_path):
    out = tmp_path / "sigma.mat"
    assert main(["construct", "sigma", "--format", "matrix", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "441 441"
    assert {row.split().count("1") for row in lines[1:]} == {160}


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "gamma", "--s", "1"],
        ["construct", "gamma"],
        ["construct", "sigma", "--s", "2"],
        ["construct", "sigma", "--power", "2"],
        ["construct", "gamma", "--s", "2", "--format", "xml"],
        ["construct", "gamma", "--s", "2", "--power", "0"],
        ["construct", "gamma", "--s", "2", "--power", "3", "--format", "dot", "--dot-limit", "100"],
        ["construct", "gamma", "--s", "6", "--enum-bound", "1000"],
        ["verify", "gamma", "--s", "1,2"],
        ["verify", "everything"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_verify_gamma_exit_codes(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["verify", "gamma", "--s", "2,3", "--report", str(report)]) == EXIT_OK
    data = json.loads(report.read_text())
    assert data["summary"]["fail"] == 0
    assert data["parameters"]["s_values"] == [2, 3]
    capsys.readouterr()
    assert main(["verify", "gamma", "--s", "2", "--inject-fault"]) == EXIT_FAIL
    assert "gamma.s2.d_s_arc_transitive" in capsys.readouterr().err


def test_verify_sigma_reports_intersections(capsys):
    assert main(["verify", "sigma", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    claim = next(c for c in data["claims"] if c["claim_id"] == "sigma.intersections")
    assert claim["details"] == {"g1": 2, "g2": 8}


def test_env_override(monkeypatch, capsys):
    monkeypatch.setenv("SYMDG_S", "2")
    assert main(["verify", "gamma", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["parameters"]["s_values"] == [2]
    monkeypatch.setenv("SYMDG_ENUM_BOUND", "lots")
    assert main(["verify", "gamma"]) == EXIT_USAGE


@pytest.mark.parametrize(
    "content,poly,verdict",
    [
        ("3 3\n1 0 0\n0 1 0\n0 0 1\n", "x - 1", "DIAGONALIZABLE"),
        ("2 2\n0 1\n0 0\n", "x^2", "NOT DIAGONALIZABLE"),
        ("[[0, 1], [1, 0]]", "x^2 - 1", "DIAGONALIZABLE"),
        ('[["1/2", 1], [0, "1/2"]]', "x^2 - x + 1/4", "NOT DIAGONALIZABLE"),
    ],
)
def test_minpoly(tmp_path, capsys, content, poly, verdict):
    path = tmp_path / "m.txt"
    path.write_text(content)
    assert main(["minpoly", str(path)]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == poly and out[-1] == verdict
    assert out[1].startswith("coefficients (ascending): ")


def test_minpoly_of_exported_gamma(tmp_path, capsys):
    path = tmp_path / "g2.mat"
    main(["construct", "gamma", "--s", "2", "--format", "matrix", "--out", str(path)])
    capsys.readouterr()
    assert main(["minpoly", str(path)]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "x^6 - 16*x^2" and out[-1] == "NOT DIAGONALIZABLE"


@pytest.mark.parametrize("content", ["2 3\n1 2 3\n4 5 6\n", "2 2\n1 x\n0 1\n", "[[1.5]]", "[[1, 2"])
def test_minpoly_errors(tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    assert main(["minpoly", str(path)]) == EXIT_USAGE
    assert main(["minpoly", str(tmp_path / "missing.txt")]) == EXIT_USAGE


def test_s_list():
    assert s_list("2,3") == [2, 3]
    assert s_list("2-4,7") == [2, 3, 4, 7]


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "symdg.cli", "verify", "kronecker"], capture_output=True, text=True, timeout=300
    )
    assert done.returncode == 0, done.stderr
    assert "kronecker.jordan_closed_form" in done.stdout
