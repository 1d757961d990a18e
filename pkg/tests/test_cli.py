import json

import pytest

from lsurf.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_table_cn_output(capsys):
    code, out = run_cli(capsys, "table-cn", "--max", "6")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# lsurf-csv v1")
    assert lines[1] == "N,C_N"
    assert lines[2:] == ["1,1", "2,5", "3,1", "4,8", "5,1", "6,5"]


def test_components_single(capsys):
    code, out = run_cli(capsys, "components", "--N", "2")
    assert code == 0
    assert out.startswith("C(2) = 5")
    assert out.count("component") == 5


def test_reduce_member_is_identity(capsys):
    code, out = run_cli(capsys, "reduce", "--surface", "L8", "--point", "0,0,1/2,0")
    assert code == 0
    assert "word: <empty>" in out
    assert "steps: 0" in out


def test_reduce_with_negative_point_literal(capsys):
    code, out = run_cli(capsys, "reduce", "--surface", "L8", "--point", "-141,100,1/2,0", "--trace")
    assert code == 0
    assert "case 1" in out


def test_explore_and_spectral_pipeline(tmp_path, capsys):
    graph_file = tmp_path / "ball.json"
    code, _ = run_cli(
        capsys,
        "explore",
        "--surface",
        "L8",
        "--point",
        "1/3,1/3,1/2,0",
        "--radius",
        "2",
        "--g2",
        "--json",
        str(graph_file),
        "--dot",
        str(tmp_path / "ball.dot"),
    )
    assert code == 0
    data = json.loads(graph_file.read_text())
    assert data["schema"] == "lsurf-graph-v1"
    assert (tmp_path / "ball.dot").read_text().startswith("graph orbitball")

    code, out = run_cli(capsys, "spectral", "--graph", str(graph_file), "--support-radius", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "lsurf-spectral-v1"
    assert float(payload["dirichlet_mu0"]) > 0


def test_classify_cli(capsys):
    code, out = run_cli(capsys, "classify", "--surface", "L8", "--point", "1/3,1/3,1/2,0", "--radius", "2")
    assert code == 0
    assert json.loads(out)["kind"] == "RootLooped4"


def test_verify_lemmas_exit_zero(capsys):
    code, out = run_cli(capsys, "verify-lemmas", "--seed", "7", "--samples", "25")
    assert code == 0
    assert "VIOLATIONS" not in out


def test_tree_cheeger_csv(capsys):
    code, out = run_cli(capsys, "tree-cheeger", "--k", "2", "--n-max", "3")
    assert code == 0
    assert "1,4/5" in out


def test_multiplicativity_json(capsys):
    code, out = run_cli(capsys, "multiplicativity", "--max", "12")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "lsurf-multiplicativity-v1"
    assert any(row["N"] == 2 and row["M"] == 3 for row in payload["pairs"])


def test_usage_error_exit_code(capsys):
    code, _ = run_cli(capsys, "reduce", "--surface", "Q9", "--point", "0,0,1/2,0")
    assert code == 2


def test_byte_identical_reruns(capsys):
    _, first = run_cli(capsys, "verify-lemmas", "--seed", "3", "--samples", "10")
    _, second = run_cli(capsys, "verify-lemmas", "--seed", "3", "--samples", "10")
    assert first == second
    _, third = run_cli(capsys, "table-cn", "--max", "8")
    _, fourth = run_cli(capsys, "table-cn", "--max", "8")
    assert third == fourth
