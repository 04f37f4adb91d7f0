"""
サイクル空間: EdgeSet の演算、階数・分解・基底抽出、基本サイクル、列挙、k-基底の監査。
"""

from __future__ import annotations

import random

import networkx as nx
import pytest

from src.cycle_space.edgeset import EdgeSet, sum_sets
from src.cycle_space.io import basis_from_dict, basis_to_dict
from src.cycle_space.linalg import (decompose, enumerate_cycle_space, extract_basis, fundamental_cycles,
                                    is_eulerian, rank)
from src.cycle_space.report import charges, ensure_kbasis, verify_kbasis
from src.errors import CapExceeded, ForeignEdgeError, InvalidBasisError, InvalidGraphError, PreconditionError
from src.graph.multigraph import Graph, SpanningForest, betti


def _k4() -> Graph:
    return Graph.from_networkx(nx.complete_graph(4))


def _random_graph(rng: random.Random, n_max: int = 6, m_max: int = 10) -> Graph:
    n = rng.randint(1, n_max)
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, m_max))]
    return Graph.from_edge_list(pairs, n)


def test_edgeset_ops():
    a = EdgeSet.of([0, 3, 5])
    b = EdgeSet.of([3, 4])
    assert (a ^ b).ids() == [0, 4, 5]
    assert (a + b) == (a ^ b)
    assert len(a) == 3 and 3 in a and 4 not in a
    assert a.without(3).ids() == [0, 5]
    assert not EdgeSet() and sum_sets([a, b, a]) == b


def test_eulerian_closure_on_random_graphs():
    rng = random.Random(3)
    for _ in range(100):
        g = _random_graph(rng)
        space = enumerate_cycle_space(g, 1 << 12)
        if len(space) < 2:
            continue
        s, t = rng.choice(space), rng.choice(space)
        assert is_eulerian(g, s) and is_eulerian(g, t)
        assert is_eulerian(g, s ^ t)


def test_loop_is_eulerian_and_path_is_not():
    g = Graph(range(2), [(0, 0, 0), (1, 0, 1)])
    assert is_eulerian(g, EdgeSet.of([0]))
    assert not is_eulerian(g, EdgeSet.of([1]))


def test_foreign_edge_rejected():
    with pytest.raises(ForeignEdgeError):
        is_eulerian(_k4(), EdgeSet.of([17]))


def test_fundamental_cycles_form_a_basis():
    rng = random.Random(5)
    for _ in range(50):
        g = _random_graph(rng)
        fc = fundamental_cycles(g)
        assert len(fc) == betti(g)
        assert rank(fc) == betti(g)
        assert all(is_eulerian(g, s) for s in fc)


def test_fundamental_cycles_reject_cyclic_forest():
    # 三角形 + パス 3-4-5。辺数は n - c = 4 だが、三角形を丸ごと含み 5 が浮いている
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)], 6)
    bogus = SpanningForest(frozenset({0, 1, 2, 3}), {1: (0, 0), 2: (1, 1), 4: (3, 3), 5: (4, 4)},
                           {0: 0, 1: 1, 2: 2, 3: 0, 4: 1, 5: 2}, (0, 3))
    with pytest.raises(PreconditionError):
        fundamental_cycles(g, bogus)
    assert len(fundamental_cycles(g)) == betti(g) == 1


def test_decompose_round_trip():
    rng = random.Random(9)
    g = Graph.from_networkx(nx.petersen_graph())
    basis = fundamental_cycles(g)
    for _ in range(1000):
        picked = [s for s in basis if rng.random() < 0.5]
        target = sum_sets(picked)
        idx = decompose(target, basis)
        assert idx is not None
        assert sum_sets(basis[i] for i in idx) == target
    # 辺 1 本は Eulerian でないので張る空間に無い
    assert decompose(EdgeSet.of([0]), basis) is None


def test_extract_basis_keeps_first_independent():
    g = _k4()
    fc = fundamental_cycles(g)
    generating = [fc[0], fc[0] ^ fc[1], fc[1], fc[2]]
    out = extract_basis(g, generating)
    assert out == [fc[0], fc[0] ^ fc[1], fc[2]]
    with pytest.raises(PreconditionError):
        extract_basis(g, fc[:2])


def test_enumerate_cycle_space_size_and_cap():
    g = Graph.from_networkx(nx.petersen_graph())
    space = enumerate_cycle_space(g, 1 << 6)
    assert len(space) == 64
    assert len(set(space)) == 64
    with pytest.raises(CapExceeded):
        enumerate_cycle_space(g, 32)


def test_verify_kbasis_triangle_fan():
    # K4 の 3 つの三角形: 外側 3 辺は charge 1、内側 3 辺は charge 2
    g = _k4()
    tri = [EdgeSet.of([0, 1, 3]), EdgeSet.of([0, 2, 4]), EdgeSet.of([1, 2, 5])]
    report = verify_kbasis(g, tri, 2)
    assert report.verdict
    assert report.max_charge == 2
    assert list(charges(g, tri)) == [2, 2, 2, 1, 1, 1]
    assert not verify_kbasis(g, tri, 1).verdict
    assert not verify_kbasis(g, tri[:2], 2).generates
    assert not verify_kbasis(g, tri + [tri[0] ^ tri[1]], 3).independent


def test_ensure_kbasis_raises_with_report():
    g = _k4()
    with pytest.raises(InvalidBasisError) as info:
        ensure_kbasis(g, [EdgeSet.of([0, 1, 3])], 2, "test")
    assert info.value.report.rank == 1


def test_report_dict_is_dense():
    g = _k4()
    tri = [EdgeSet.of([0, 1, 3]), EdgeSet.of([0, 2, 4]), EdgeSet.of([1, 2, 5])]
    d = verify_kbasis(g, tri, 2).to_dict()
    assert d["charges"] == [2, 2, 2, 1, 1, 1]
    assert d["verdict"] is True and d["dimension"] == 3


def test_basis_json():
    g = _k4()
    tri = [EdgeSet.of([0, 1, 3]), EdgeSet.of([0, 2, 4])]
    g2, elems = basis_from_dict(basis_to_dict(g, tri))
    assert g2 == g and elems == tri
    with pytest.raises(InvalidGraphError):
        basis_from_dict({"graph": {"vertices": [], "edges": []}})



def test_basis_json_rejects_repeated_edge_ids():
    # [0, 0, 1, 3] を XOR で畳むと三角形でない {1, 3} になる
    data = basis_to_dict(_k4(), [EdgeSet.of([0, 1, 3])])
    data["elements"] = [[0, 0, 1, 3]]
    with pytest.raises(InvalidGraphError):
        basis_from_dict(data)


def _walk_set(g: Graph, walk: str) -> EdgeSet:
    # 頂点ラベル 1..7 を 0..6 に詰めた閉路
    verts = [int(c) - 1 for c in walk]
    ids = []
    for a, b in zip(verts, verts[1:] + verts[:1]):
        ids.append(next(e.id for e in g.edges if {e.u, e.v} == {a, b}))
    return EdgeSet.of(ids)


def test_decompose_k34_worked_example():
    # 部集合 {1,3,5,7} と {2,4,6}
    pairs = [(a - 1, b - 1) for a in (1, 3, 5, 7) for b in (2, 4, 6)]
    g = Graph.from_edge_list(pairs)
    walks = ["367452", "234567", "1436", "4127", "4521", "1236"]
    basis = [_walk_set(g, w) for w in walks]
    assert verify_kbasis(g, basis, 3).verdict
    # 木の経路 5-6-1-4 と辺 45 でできる基本サイクル
    assert decompose(_walk_set(g, "4561"), basis) == [0, 1, 2, 3, 4]


if __name__ == "__main__":
    test_edgeset_ops()
    test_eulerian_closure_on_random_graphs()
    test_loop_is_eulerian_and_path_is_not()
    test_foreign_edge_rejected()
    test_fundamental_cycles_form_a_basis()
    test_fundamental_cycles_reject_cyclic_forest()
    test_decompose_round_trip()
    test_decompose_k34_worked_example()
    test_extract_basis_keeps_first_independent()
    test_enumerate_cycle_space_size_and_cap()
    test_verify_kbasis_triangle_fan()
    test_ensure_kbasis_raises_with_report()
    test_report_dict_is_dense()
    test_basis_json()
    test_basis_json_rejects_repeated_edge_ids()
    print("OK")
