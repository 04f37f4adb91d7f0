"""
Graph と構造プリミティブのテスト。
- 辺 ID の扱い (ループ・多重辺・採番)
- 連結成分 / betti / ブロック / girth
- 縮約・細分・頂点分割
- JSON / DOT
"""

from __future__ import annotations

import random

import networkx as nx
import pytest

from src.errors import InvalidGraphError, PreconditionError
from src.graph.io import dumps, graph_from_dict, graph_to_dict, graph_to_dot
from src.graph.multigraph import (Edge, Graph, add_edge, betti, blocks, components, contract, girth,
                                  is_connected, is_two_connected, isomorphic, spanning_forest, subdivide,
                                  vertex_split)


def _theta() -> Graph:
    # 0 と 1 を結ぶ 3 本の平行辺
    return Graph.from_edge_list([(0, 1), (0, 1), (0, 1)])


def test_loops_and_parallel_edges_are_distinct():
    g = Graph(range(2), [Edge(0, 0, 1), Edge(1, 0, 1), Edge(2, 1, 1)])
    assert g.n == 2 and g.m == 3
    assert not g.is_simple()
    assert g.incident(1) == [0, 1, 2]
    assert g.edge(2).is_loop
    assert betti(g) == 2


def test_duplicate_and_dangling_edges_rejected():
    with pytest.raises(InvalidGraphError):
        Graph(range(2), [Edge(0, 0, 1), Edge(0, 1, 0)])
    with pytest.raises(InvalidGraphError):
        Graph(range(2), [Edge(0, 0, 5)])
    with pytest.raises(InvalidGraphError):
        Graph.from_edge_list([(0, 1)]).edge(7)


def test_components_and_betti():
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (3, 4)], n=6)
    assert components(g) == [[0, 1, 2], [3, 4], [5]]
    assert not is_connected(g)
    assert betti(g) == 1


def test_spanning_forest_size():
    g = Graph.from_networkx(nx.petersen_graph())
    forest = spanning_forest(g)
    assert len(forest.tree_edges) == g.n - 1
    path = forest.path(0, 7)
    assert path and all(eid in forest.tree_edges for eid in path)


def test_blocks_of_two_triangles_sharing_a_vertex():
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)])
    assert blocks(g) == [frozenset({0, 1, 2}), frozenset({3, 4, 5}), frozenset({6})]
    assert not is_two_connected(g)
    assert is_two_connected(Graph.from_networkx(nx.complete_graph(4)))
    assert is_two_connected(_theta())


def test_girth():
    assert girth(Graph.from_networkx(nx.petersen_graph())) == 5
    assert girth(Graph.from_networkx(nx.heawood_graph())) == 6
    assert girth(_theta()) == 2
    assert girth(Graph(range(1), [Edge(0, 0, 0)])) == 1
    assert girth(Graph.from_edge_list([(0, 1), (1, 2)])) is None


def test_contract_keeps_other_edge_ids():
    g = Graph.from_networkx(nx.complete_graph(4))
    h, z = contract(g, 0)
    assert z == g.next_vertex_id
    assert h.n == 3 and h.m == 5
    assert 0 not in h.edge_ids
    assert sorted(h.edge_ids) == [1, 2, 3, 4, 5]
    # 三角形の 2 辺が平行辺になる
    assert not h.is_simple()


def test_contract_loop_deletes_it():
    g = Graph(range(1), [Edge(0, 0, 0), Edge(1, 0, 0)])
    h, z = contract(g, 0)
    assert z is None and h.edge_ids == [1]


def test_subdivide_keeps_id_on_first_half():
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    h, w, fresh = subdivide(g, 1)
    assert h.edge(1) == Edge(1, 1, w)
    assert h.edge(fresh) == Edge(fresh, w, 2)
    assert betti(h) == betti(g)
    back, _ = contract(h, fresh)
    assert isomorphic(back, g)


def test_vertex_split_then_contract_recovers_graph():
    g = Graph.from_networkx(nx.complete_graph(5))
    inc = g.incident(0)
    h, w, fresh = vertex_split(g, 0, inc[:2], inc[2:])
    assert h.degree(0) == 3 and h.degree(w) == 3
    back, _ = contract(h, fresh)
    assert isomorphic(back, g)
    with pytest.raises(PreconditionError):
        vertex_split(g, 0, inc, [])


def test_ids_are_never_reused():
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    h, _ = contract(g, 2)
    h2, eid = add_edge(h, h.vertices[0], h.vertices[-1])
    assert eid == 3


def test_isomorphic_with_and_without_edge_ids():
    a = Graph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    b = Graph.from_edge_list([(1, 2), (2, 0), (0, 1)])
    assert isomorphic(a, b)
    assert isomorphic(a, b, match_edge_ids=True)
    c = a.relabel_edges({0: 5})
    assert isomorphic(a, c)
    assert not isomorphic(a, c, match_edge_ids=True)
    assert not isomorphic(a, _theta())


def test_networkx_round_trip_keeps_ids():
    g = Graph(range(3), [Edge(4, 0, 1), Edge(9, 1, 2), Edge(2, 0, 1)])
    back = Graph.from_networkx(g.to_networkx())
    assert back == g


def test_json_is_byte_stable():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(2, 8)
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(1, 12))]
        g = Graph.from_edge_list(pairs, n)
        text = dumps(graph_to_dict(g))
        again = graph_from_dict(graph_to_dict(g))
        assert again == g
        assert dumps(graph_to_dict(again)) == text


def test_malformed_json_rejected():
    with pytest.raises(InvalidGraphError):
        graph_from_dict({"vertices": [0, 1], "edges": [{"id": 0, "u": 0}]})


def test_dot_marks_squares_and_bold_edges():
    g = Graph.from_edge_list([(0, 1), (1, 2)])
    text = graph_to_dot(g, highlight=[1], square_vertices=[2])
    assert text.startswith("graph G {")
    assert "shape=square" in text
    assert "penwidth=3" in text


if __name__ == "__main__":
    test_loops_and_parallel_edges_are_distinct()
    test_duplicate_and_dangling_edges_rejected()
    test_components_and_betti()
    test_spanning_forest_size()
    test_blocks_of_two_triangles_sharing_a_vertex()
    test_girth()
    test_contract_keeps_other_edge_ids()
    test_contract_loop_deletes_it()
    test_subdivide_keeps_id_on_first_half()
    test_vertex_split_then_contract_recovers_graph()
    test_ids_are_never_reused()
    test_isomorphic_with_and_without_edge_ids()
    test_networkx_round_trip_keeps_ids()
    test_json_is_byte_stable()
    test_malformed_json_rejected()
    test_dot_marks_squares_and_bold_edges()
    print("OK")
