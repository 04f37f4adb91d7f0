"""
下界・厳密探索・ブロック分解・並列探索・証明書。
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from src.cycle_space.edgeset import EdgeSet
from src.errors import BudgetExceeded, CapExceeded, CutoffExceeded, InvalidBasisError, PreconditionError
from src.graph.multigraph import Graph, subdivide
from src.search.bounds import (apply_chain, certified_lower_bound, counting_lower_bound, cubic_girth_bound,
                               cubic_lower_bound, lower_bound_by_contraction_chain, planarity_lower_bound)
from src.search.budget import Clock, SearchBudget
from src.search.certificate import BasisNumberCertificate, fingerprint
from src.search.exact import basis_number_by_blocks, exact_basis_number, naive_basis_number

SMALL = SearchBudget(cap_dim=12, seconds=120.0, max_nodes=2_000_000)


def _nx(graph: nx.Graph) -> Graph:
    return Graph.from_networkx(graph)


K4 = _nx(nx.complete_graph(4))
K5 = _nx(nx.complete_graph(5))
K33 = _nx(nx.complete_bipartite_graph(3, 3))
PETERSEN = _nx(nx.petersen_graph())


# ---------- 下界 ----------

def test_counting_bound_values():
    assert counting_lower_bound(K4) == 2
    assert counting_lower_bound(K5) == 2
    assert counting_lower_bound(K33) == 2
    assert counting_lower_bound(PETERSEN) == 2
    assert counting_lower_bound(_nx(nx.cycle_graph(5))) == 1


def test_counting_bound_needs_a_cycle():
    with pytest.raises(PreconditionError):
        counting_lower_bound(_nx(nx.path_graph(4)))


def test_cubic_girth_bound():
    assert cubic_girth_bound(30, 3) == 7
    assert cubic_girth_bound(10, 2) == 5
    with pytest.raises(PreconditionError):
        cubic_girth_bound(9, 3)
    with pytest.raises(PreconditionError):
        cubic_girth_bound(10, 0)


def test_cubic_lower_bound():
    assert cubic_lower_bound(K5) is None
    assert cubic_lower_bound(PETERSEN) == 2
    tutte = _nx(nx.LCF_graph(30, [-13, -9, 7, -7, 9, 13], 5))
    assert cubic_lower_bound(tutte) == 4


def test_planarity_bound():
    assert planarity_lower_bound(_nx(nx.path_graph(3))) == 0
    assert planarity_lower_bound(K4) == 1
    assert planarity_lower_bound(K5) == 3
    assert planarity_lower_bound(K33) == 3


def test_certified_lower_bound():
    assert certified_lower_bound(_nx(nx.path_graph(3))) == 0
    assert certified_lower_bound(K4) == 2
    assert certified_lower_bound(PETERSEN) == 3


def test_contraction_chain_carries_bound():
    g, _, fresh = subdivide(K5, 0)
    assert lower_bound_by_contraction_chain(g, [("unsubdivide", fresh)]) == 3
    assert lower_bound_by_contraction_chain(g, [("unsubdivide", fresh)], base_bound=5) == 5


def test_apply_chain_rejects_bad_steps():
    with pytest.raises(PreconditionError):
        apply_chain(K4, [("delete", 0)])
    with pytest.raises(PreconditionError):
        apply_chain(K4, [("contract", 99)])
    with pytest.raises(PreconditionError):
        apply_chain(K4, [("unsubdivide", 0)])


# ---------- 厳密探索 ----------

@pytest.mark.parametrize("graph, value, reason", [
    (K4, 2, "counting"),
    (K5, 3, "exhaustion"),
    (K33, 3, "exhaustion"),
    (PETERSEN, 3, "exhaustion"),
    (_nx(nx.cycle_graph(6)), 1, "counting"),
])
def test_exact_values(graph, value, reason):
    cert = exact_basis_number(graph, SMALL)
    assert cert.value == value
    assert cert.lower_bound_reason == reason
    assert cert.exhaustive
    assert cert.verify(graph).verdict
    assert len(cert.witness) == graph.m - graph.n + 1


@pytest.mark.parametrize("graph", [K4, K5, K33, _nx(nx.wheel_graph(5))])
def test_naive_agrees_with_branch_and_bound(graph):
    assert naive_basis_number(graph) == exact_basis_number(graph, SMALL).value


def test_naive_cutoff():
    with pytest.raises(CutoffExceeded):
        naive_basis_number(_nx(nx.complete_graph(6)))


def test_forest_has_basis_number_zero():
    cert = exact_basis_number(_nx(nx.path_graph(5)), SMALL)
    assert cert.value == 0 and cert.witness == []


def test_budget_exceeded_keeps_bounds():
    with pytest.raises(BudgetExceeded) as info:
        exact_basis_number(K5, SearchBudget(cap_dim=12, seconds=60.0, max_nodes=1))
    assert info.value.lower is not None and info.value.lower >= 2
    assert info.value.upper is not None


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        exact_basis_number(K5, SearchBudget(cap_dim=4))


def test_clock_counts_nodes():
    clock = Clock(max_nodes=2, seconds=60.0)
    clock.tick()
    clock.tick()
    with pytest.raises(BudgetExceeded):
        clock.tick()


def test_budget_rejects_non_positive_limits():
    with pytest.raises(PreconditionError):
        SearchBudget(seconds=0)
    with pytest.raises(PreconditionError):
        SearchBudget(workers=0)


def test_blocks_take_the_maximum():
    # K4 と三角形を頂点 0 で貼り合わせる
    pairs = list(combinations(range(4), 2)) + [(0, 4), (4, 5), (5, 0)]
    g = Graph.from_edge_list(pairs)
    cert = basis_number_by_blocks(g, SMALL)
    assert cert.value == 2
    assert cert.verify(g).verdict
    assert cert.value == exact_basis_number(g, SMALL).value


def test_parallel_search_matches_sequential():
    sequential = exact_basis_number(K33, SMALL)
    parallel = exact_basis_number(K33, SearchBudget(cap_dim=12, seconds=120.0, max_nodes=2_000_000, workers=2))
    assert parallel.value == sequential.value
    assert [s.bits for s in parallel.witness] == [s.bits for s in sequential.witness]


# ---------- 証明書 ----------

def test_certificate_dict_round_trip():
    cert = exact_basis_number(K4, SMALL)
    back = BasisNumberCertificate.from_dict(cert.to_dict())
    assert back.value == cert.value
    assert back.witness == cert.witness
    assert back.lower_bound_reason == cert.lower_bound_reason
    back.verify(K4)


def test_certificate_rejects_unknown_reason():
    with pytest.raises(InvalidBasisError):
        BasisNumberCertificate(2, [], "guess", True)


def test_certificate_verify_fails_on_wrong_value():
    cert = BasisNumberCertificate(1, [EdgeSet.of([0, 1, 3]), EdgeSet.of([0, 2, 4]), EdgeSet.of([1, 2, 5])],
                                  "counting", True)
    with pytest.raises(InvalidBasisError):
        cert.verify(Graph.from_edge_list(list(combinations(range(4), 2))))


def test_fingerprint_depends_on_edge_ids():
    a = Graph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    b = Graph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    c = a.relabel_edges({0: 10})
    assert fingerprint(a) == fingerprint(b)
    assert fingerprint(a) != fingerprint(c)


if __name__ == "__main__":
    test_counting_bound_values()
    test_cubic_girth_bound()
    test_exact_values(K5, 3, "exhaustion")
    test_blocks_take_the_maximum()
    test_certificate_dict_round_trip()
    print("OK")
