"""
既知グラフのカタログ: 表現からの構築、埋め込み、検証レポート。
"""

from __future__ import annotations

import pytest

from src.catalog.registry import (contraction_chain, entry_embedding, entry_graph, generalized_petersen, get_entry,
                                  list_entries)
from src.catalog.verify import short_cycle_upper_bound, summary_frame, verify_catalog, verify_entry
from src.errors import PreconditionError, UnknownEntryError
from src.graph.multigraph import betti, girth, isomorphic
from src.search.bounds import apply_chain
from src.search.budget import SearchBudget

SMALL = SearchBudget(cap_dim=12, seconds=120.0, max_nodes=2_000_000)


def test_entries_build_with_catalog_betti():
    entries = list_entries()
    assert len(entries) == 14
    for entry in entries:
        assert betti(entry_graph(entry.name)) == entry.betti, entry.name


def test_entry_listing():
    entry = get_entry("Desargues")
    listed = entry.to_dict()
    assert listed["embeddings"] == ["desargues-two-rings"]
    assert listed["basis_number"] == 3 and not listed["basis_number_is_lower_bound"]
    assert entry.explicit_basis == "desargues"


def test_unknown_entry():
    with pytest.raises(UnknownEntryError):
        get_entry("Nonexistent")
    with pytest.raises(UnknownEntryError):
        entry_graph("Nonexistent")


def test_generalized_petersen():
    g = generalized_petersen(5, 2)
    assert (g.n, g.m, girth(g)) == (10, 15, 5)
    with pytest.raises(PreconditionError):
        generalized_petersen(6, 3)


def test_girths_of_cages():
    assert girth(entry_graph("Heawood")) == 6
    assert girth(entry_graph("McGee")) == 7
    assert girth(entry_graph("Tutte8Cage")) == 8


def test_subdivided_entry_contracts_to_base():
    chain = contraction_chain("SubdividedTutte8Cage")
    assert len(chain) == 4 and all(op == "unsubdivide" for op, _ in chain)
    sub = entry_graph("SubdividedTutte8Cage")
    assert sub.n == 30 + 4 and sub.max_degree() == 3
    base = apply_chain(sub, chain)
    assert isomorphic(base, entry_graph("Tutte8Cage"))
    assert contraction_chain("K6") == []


def test_entry_embeddings_match_graphs():
    for name, key in [("K6", "k6-full"), ("Petersen", "petersen-poppy"), ("Desargues", "desargues-two-rings"),
                      ("Hypercube4", "hypercube4-optimal"), ("Nauru", "nauru-split-skeleton")]:
        emb = entry_embedding(name, key)
        assert emb.validate() == []
        assert isomorphic(emb.graph, entry_graph(name)), name


def test_short_cycle_upper_bound():
    assert short_cycle_upper_bound(entry_graph("K4Crossed")) == 2


@pytest.mark.parametrize("name", ["K4Crossed", "K3,4", "Petersen"])
def test_verify_small_entries_with_exact_search(name):
    report = verify_entry(name, SMALL)
    assert report.passed, report.failures
    assert report.exact == report.expected


def test_verify_petersen_notes_table_difference():
    report = verify_entry("Petersen", run_exact=False)
    assert report.passed
    assert any("connected_skeleton" in note for note in report.notes)
    check = report.embeddings[0]
    assert check.isomorphic and not check.mismatches


def test_verify_desargues_without_exact():
    report = verify_entry("Desargues", run_exact=False)
    assert report.passed, report.failures
    assert report.upper_sources["explicit:desargues"] == 3
    assert report.lower == report.upper == 3


@pytest.mark.parametrize("name", ["K4,4", "Hypercube4", "McGee", "Nauru", "Franklin"])
def test_drawn_table_entries(name):
    report = verify_entry(name, run_exact=False)
    assert report.passed, report.failures
    assert report.embeddings
    for check in report.embeddings:
        assert check.isomorphic and not check.mismatches
        assert not check.profile["poppy"] and not check.profile["locally_maximal"]


def test_hypercube_drawing_is_crossing_optimal():
    # 連結な骨格には非交差辺が 15 本以上いるので交差は 8 個以下。cr(Q4) = 8 なので、
    # 交差 8 個の描画で骨格が 2 成分なら、公表フラグとの差は注記になる
    report = verify_entry("Hypercube4", run_exact=False)
    (check,) = report.embeddings
    assert check.profile["crossings"] == 8
    assert not check.profile["connected_skeleton"]
    assert any("connected_skeleton" in note for note in report.notes)


@pytest.mark.parametrize("name", ["Tutte8Cage", "SubdividedTutte8Cage"])
def test_lower_bound_entries(name):
    report = verify_entry(name, run_exact=False)
    assert report.passed, report.failures
    assert report.expected_is_lower_bound
    assert report.lower >= 4


def test_summary_frame():
    reports = verify_catalog(["K4Crossed", "Desargues"], run_exact=False)
    frame = summary_frame(reports)
    assert list(frame["name"]) == ["K4Crossed", "Desargues"]
    assert frame["passed"].all()
    assert set(frame.columns) >= {"lower", "upper", "catalog", "exact"}


if __name__ == "__main__":
    test_entries_build_with_catalog_betti()
    test_verify_desargues_without_exact()
    test_drawn_table_entries("Franklin")
    test_lower_bound_entries("Tutte8Cage")
    print("OK")
