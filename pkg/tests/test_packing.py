"""
辺素な全域木のパッキング。増加路法・総当たり・Nash-Williams/Tutte の条件を突き合わせる。
"""

from __future__ import annotations

import random

import networkx as nx
import pytest

from src.errors import CutoffExceeded, DisconnectedGraphError
from src.graph.multigraph import Graph, components
from src.graph.packing import nash_williams_tutte_condition, tree_packing


def _is_spanning_tree(g: Graph, tree) -> bool:
    sub = g.edge_subgraph(tree)
    return len(tree) == g.n - 1 and len(components(sub)) == 1


def _check_packing(g: Graph, trees) -> None:
    seen = set()
    for t in trees:
        assert _is_spanning_tree(g, t)
        assert not (seen & set(t))
        seen |= set(t)


def test_k6_has_three_disjoint_spanning_trees():
    g = Graph.from_networkx(nx.complete_graph(6))
    trees = tree_packing(g, 3)
    assert trees is not None and len(trees) == 3
    _check_packing(g, trees)
    assert tree_packing(g, 4) is None


def test_multigraph_on_two_vertices():
    g = Graph.from_edge_list([(0, 1)] * 12)
    trees = tree_packing(g, 3)
    assert trees is not None
    _check_packing(g, trees)


def test_cycle_has_one_tree_only():
    g = Graph.from_networkx(nx.cycle_graph(6))
    assert tree_packing(g, 1) is not None
    assert tree_packing(g, 2) is None


def test_disconnected_graph_rejected():
    g = Graph.from_edge_list([(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        tree_packing(g, 1)


def test_single_vertex_packs_empty_trees():
    assert tree_packing(Graph(range(1)), 3) == [frozenset()] * 3


def test_exhaustive_cutoff():
    g = Graph.from_networkx(nx.complete_graph(12))
    with pytest.raises(CutoffExceeded):
        tree_packing(g, 2, method="exhaustive")


def test_methods_agree_with_partition_condition():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(2, 5)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, n + 1))]
        pairs += [(i, i + 1) for i in range(n - 1)]
        g = Graph.from_edge_list(pairs, n)
        for k in (1, 2, 3):
            fast = tree_packing(g, k)
            slow = tree_packing(g, k, method="exhaustive")
            cond = nash_williams_tutte_condition(g, k)
            assert (fast is not None) == (slow is not None) == cond
            if fast is not None:
                _check_packing(g, fast)


if __name__ == "__main__":
    test_k6_has_three_disjoint_spanning_trees()
    test_multigraph_on_two_vertices()
    test_cycle_has_one_tree_only()
    test_disconnected_graph_rejected()
    test_single_vertex_packs_empty_trees()
    test_exhaustive_cutoff()
    test_methods_agree_with_partition_condition()
    print("OK")
