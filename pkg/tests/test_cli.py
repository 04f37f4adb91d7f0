"""
CLI: 終了コード・JSON 出力・出力のバイト単位の再現性。
"""

from __future__ import annotations

import io
import json
import os
from itertools import combinations

import networkx as nx

from src.cli import EXIT_BUDGET, EXIT_FALSE, EXIT_INPUT, EXIT_OK, run
from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.io import basis_to_dict
from src.graph.io import dumps, graph_to_dict
from src.graph.multigraph import Graph

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
K4 = Graph.from_edge_list(list(combinations(range(4), 2)))
TRIANGLES = [EdgeSet.of([0, 1, 3]), EdgeSet.of([0, 2, 4]), EdgeSet.of([1, 2, 5])]


def _run(argv, payload=None):
    stdin = io.StringIO(payload if isinstance(payload, str) else dumps(payload) if payload is not None else "")
    stdout = io.StringIO()
    code = run(argv, stdin=stdin, stdout=stdout)
    return code, stdout.getvalue()


def _fixture_path(name: str) -> str:
    return os.path.join(ROOT, "config", "embeddings", f"{name}.json")


def test_verify_kbasis_exit_codes():
    data = basis_to_dict(K4, TRIANGLES)
    code, out = _run(["verify-kbasis", "-k", "2"], data)
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] is True
    code, out = _run(["verify-kbasis", "-k", "1"], data)
    assert code == EXIT_FALSE
    assert json.loads(out)["max_charge"] == 2


def test_malformed_json_is_input_error():
    code, out = _run(["verify-kbasis", "-k", "2"], "{not json")
    assert code == EXIT_INPUT
    assert "error" in json.loads(out)


def test_missing_required_flag_is_input_error():
    code, _ = _run(["construct"])
    assert code == EXIT_INPUT


def test_foreign_edge_is_input_error():
    data = basis_to_dict(K4, [EdgeSet.of([0, 1, 99])])
    code, _ = _run(["verify-kbasis", "-k", "3"], data)
    assert code == EXIT_INPUT


def test_validate_and_classify_fixture():
    code, out = _run(["validate", "--input", _fixture_path("k34")])
    assert code == EXIT_OK and json.loads(out)["valid"] is True
    code, out = _run(["classify", "--input", _fixture_path("k34")])
    profile = json.loads(out)
    assert code == EXIT_OK
    assert profile["poppy"] is True and profile["full_crossing"] is False


def test_construct_poppy3_and_infeasible():
    code, out = _run(["construct", "--method", "poppy3", "--input", _fixture_path("k34")])
    assert code == EXIT_OK
    assert json.loads(out)["report"]["verdict"] is True
    code, out = _run(["construct", "--method", "poppy3", "--input", _fixture_path("petersen")])
    assert code == EXIT_FALSE
    assert json.loads(out)["infeasible"] is True


def test_construct_output_is_byte_identical():
    first = _run(["construct", "--method", "full3", "--input", _fixture_path("k6")])
    second = _run(["construct", "--method", "full3", "--input", _fixture_path("k6")])
    assert first[0] == EXIT_OK
    assert first == second


def test_transform_subdivide():
    code, out = _run(["transform", "subdivide", "--edge", "3"], basis_to_dict(K4, TRIANGLES))
    assert code == EXIT_OK
    payload = json.loads(out)
    assert len(payload["basis"]["graph"]["edges"]) == 7
    assert payload["report"]["verdict"] is True


def test_transform_needs_edge():
    code, _ = _run(["transform", "contract"], basis_to_dict(K4, TRIANGLES))
    assert code == EXIT_INPUT


def test_basis_number_bounds_and_exact():
    k5 = graph_to_dict(Graph.from_networkx(nx.complete_graph(5)))
    code, out = _run(["basis-number"], k5)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["lower"] == 3 and payload["upper"] >= 3
    assert payload["exhaustive"] is False
    code, out = _run(["basis-number", "--exact"], k5)
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["value"] == 3 and payload["exhaustive"] is True


def test_basis_number_budget_exit():
    k5 = graph_to_dict(Graph.from_networkx(nx.complete_graph(5)))
    code, out = _run(["basis-number", "--exact", "--max-nodes", "1"], k5)
    assert code == EXIT_BUDGET
    assert json.loads(out)["lower"] >= 2


def test_catalog_list_and_verify_desargues():
    code, out = _run(["catalog", "list"])
    names = [e["name"] for e in json.loads(out)["entries"]]
    assert code == EXIT_OK and "Desargues" in names
    code, out = _run(["catalog", "verify", "Desargues", "--no-exact"])
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["explicit_basis"]["report"]["verdict"] is True
    assert payload["lower"] == payload["upper"] == 3


def test_catalog_unknown_entry():
    code, _ = _run(["catalog", "verify", "Nonexistent"])
    assert code == EXIT_INPUT


def test_catalog_export_dot():
    code, out = _run(["catalog", "export", "K4Crossed", "--embedding", "k4-crossed", "--format", "dot"])
    assert code == EXIT_OK
    assert out.lstrip().startswith("graph")


def test_generate_is_seeded():
    argv = ["--seed", "11", "generate", "--kind", "poppy", "--n-max", "12"]
    assert _run(argv) == _run(argv)
    assert _run(argv)[0] == EXIT_OK


def test_unbounded_family_command():
    k5 = graph_to_dict(Graph.from_networkx(nx.complete_graph(5)))
    code, out = _run(["unbounded-family", "--ell", "3"], k5)
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["max_degree"] <= 3 and payload["ic"] is True
    assert payload["claimed_lower_bound"] == 3


if __name__ == "__main__":
    test_verify_kbasis_exit_codes()
    test_malformed_json_is_input_error()
    test_catalog_list_and_verify_desargues()
    print("OK")
