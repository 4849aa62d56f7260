"""Command-line surface: outputs, determinism, exit codes."""

import json
from pathlib import Path

import pytest

from sumchoice.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def test_generate_emits_schema(capsys):
    code, doc = run_json(capsys, ["generate", "--family", "complete_bipartite", "--a", "2", "--q", "3"])
    assert code == 0
    assert doc["n"] == 5 and len(doc["edges"]) == 6
    assert doc["parts"] == {"A": [0, 1], "Q": [2, 3, 4]}


def test_generate_params_flag(capsys):
    code, doc = run_json(capsys, ["generate", "--family", "disjoint_cliques", "--params", "2,2"])
    assert code == 0 and doc["n"] == 4


def test_check_insufficient_witness(capsys):
    code, doc = run_json(capsys, ["check", "--graph", str(FIXTURES / "k2.json"), "--f", "1,1"])
    assert code == 0
    assert doc["verdict"] == "insufficient"
    assert doc["witness"]["lists"] == [[0], [0]]


def test_check_lists_mode(capsys, tmp_path):
    lists = tmp_path / "lists.json"
    lists.write_text(json.dumps({"lists": [[0], [1]]}))
    code, doc = run_json(capsys, ["check", "--graph", str(FIXTURES / "k2.json"), "--lists", str(lists)])
    assert code == 0 and doc["colorable"] is True and doc["coloring"] == [0, 1]


def test_sumchoice_k22(capsys):
    code, doc = run_json(capsys, ["sumchoice", "--family", "complete_bipartite", "--a", "2", "--q", "2"])
    assert code == 0
    assert doc["chi_sc"] == 8
    assert sum(doc["optimal_f"]) == 8
    assert doc["budget_used"] > 0 and "undecided" not in doc


def test_sumchoice_undecided_exit_code(capsys):
    code, doc = run_json(capsys, ["sumchoice", "--family", "cycle", "--n", "4", "--budget", "3"])
    assert code == 3
    assert doc["undecided"] is True and doc["chi_sc"] is None


def test_bounds_json(capsys):
    code, doc = run_json(capsys, ["bounds", "--a", "2", "--q", "12"])
    assert code == 0
    assert doc["closed_form"] == 32 and doc["sandwich_ok"] is True
    assert doc["lb"] < 32 < doc["ub"]


def test_beta_cli(capsys):
    code, doc = run_json(capsys, ["beta", "--a", "2", "--tol", "1e-6"])
    assert code == 0
    assert doc["beta"] == 2.0


def test_constr_cli(capsys):
    code, doc = run_json(capsys, ["constr", "--t", "2", "--ell", "1"])
    assert code == 0
    assert doc["insufficient"] is True and doc["a"] == 4 and doc["q"] == 2


def test_type2_cli_witness(capsys):
    code, doc = run_json(capsys, ["type2", "--a", "2", "--q", "4", "--f", "2,2"])
    assert code == 0
    assert doc["verdict"] == "insufficient"
    assert doc["witness"]["cost"] == 4


def test_type2_cli_sufficient(capsys):
    code, doc = run_json(capsys, ["type2", "--a", "2", "--q", "4", "--f", "2,3"])
    assert code == 0 and doc["verdict"] == "sufficient"


def test_split_bounds_cli(capsys):
    code, doc = run_json(capsys, ["split-bounds", "--a", "3", "--q", "10"])
    assert code == 0
    assert doc["s"] == 13 and doc["upper"] == 59


def test_sdr_cli(capsys, tmp_path):
    lists = tmp_path / "lists.json"
    lists.write_text(json.dumps({"lists": [[0, 1, 2, 3]] * 2}))
    graph = tmp_path / "g.json"
    graph.write_text(json.dumps({"n": 4, "edges": [[0, 1]]}))
    code, doc = run_json(capsys, ["sdr", "--graph", str(graph), "--lists", str(lists)])
    assert code == 0 and doc["success"] is True
    assert len(doc["steps"]) == 2
    assert doc["steps"][0]["d"] >= 1


def test_experiment_csv_shape(capsys):
    code, out = run(capsys, ["experiment", "rt", "--a", "2", "--q", "8", "--trials", "3", "--seed", "1"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("# config:")
    assert lines[1] == "trial,Y,min_X_u,success"
    assert len(lines) == 5


def test_byte_identical_reruns(capsys):
    argv = ["experiment", "rt", "--a", "2", "--q", "8", "--trials", "4", "--seed", "9"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second
    argv = ["sumchoice", "--family", "path", "--n", "4"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["bounds", "--a", "2"])  # missing --q
    assert err.value.code == 2


def test_value_error_maps_to_usage_exit(capsys):
    code = main(["type2", "--a", "2", "--q", "4", "--f", "2,3,4"])
    assert code == 2


def test_verify_tables_fast_rows(capsys):
    code, out = run(capsys, ["verify-tables", "--only", "1,4,5"])
    assert code == 0
    assert out.count("PASS") == 3 and "FAIL" not in out


def test_verify_tables_unknown_row(capsys):
    assert main(["verify-tables", "--only", "99"]) == 2
