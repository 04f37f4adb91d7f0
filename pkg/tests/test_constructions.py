"""
構成器: 面の基底、交差 1 つの基底、3/4/8-基底、デザルグ、歪度、ブローアップ。
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

import networkx as nx
import pytest

from src.catalog.registry import entry_embedding, list_entries
from src.constructions.auxiliary import auxiliary_graph, disconnected_skeleton_8basis
from src.constructions.blowup import blowup
from src.constructions.crossing_bases import check_assignment, k4_assignment_basis, poppy_assignment_basis
from src.constructions.desargues import desargues_3basis, outer_cycle
from src.constructions.facial import (connected_skeleton_4basis, facial_basis, facial_cycles, planar_2basis,
                                      skewness_basis, union_cover_basis)
from src.constructions.orientation import balanced_dual_orientation, balanced_skirt_orientation
from src.constructions.three_basis import fullcrossing_3basis, poppy_3basis
from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import decompose, is_eulerian, rank
from src.cycle_space.report import charges, verify_kbasis
from src.data_loader import load_json
from src.embedding.analysis import classify, crossing_surrounding_cycle, skirt_walks
from src.embedding.generators import (crossed_c4, cube_with_diagonals, from_plane_graph, random_biconnected_plane,
                                      random_poppy_embedding)
from src.embedding.io import fixture_from_dict
from src.errors import PreconditionError
from src.graph.multigraph import Graph, betti
from src.transforms.terminal import TerminalGraph


def _fixture(name: str):
    return fixture_from_dict(load_json(f"embeddings/{name}.json"))


def _k4_cycle_order() -> Graph:
    # 辺 j = u_j-u_{j+1} (j=0..3)、弦 4 = u0-u2、5 = u1-u3
    return Graph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])


# ---------- 面の基底 ----------

def test_planar_2basis_on_k4():
    g = Graph.from_edge_list(list(combinations(range(4), 2)))
    emb = from_plane_graph(g)
    basis = planar_2basis(emb)
    report = verify_kbasis(g, basis, 2)
    assert report.verdict
    assert len(basis) == betti(g) == 3


def test_planar_2basis_rejects_crossings():
    with pytest.raises(PreconditionError):
        planar_2basis(crossed_c4())


def test_planar_2basis_random_plane_graphs():
    for seed in range(200):
        emb = random_biconnected_plane(random.Random(seed), n_max=50)
        basis = planar_2basis(emb)
        report = verify_kbasis(emb.graph, basis, 2)
        assert report.verdict, seed
        for eid in facial_cycles(emb)[emb.outer_face]:
            assert report.charge_of(eid) == 1, seed


def test_facial_basis_of_forest_is_empty():
    g = Graph.from_edge_list([(0, 1), (1, 2), (1, 3)])
    assert facial_basis(from_plane_graph(g)) == []


def test_union_cover_needs_cover():
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    part = g.edge_subgraph([0, 1])
    with pytest.raises(PreconditionError):
        union_cover_basis(g, part, part, [], [])


def test_skewness_basis_k5():
    k5 = nx.complete_graph(5)
    k5.remove_edge(0, 1)
    plane = Graph.from_networkx(k5)
    emb = from_plane_graph(plane)
    g, basis = skewness_basis(emb, [(0, 1)])
    assert g.m == 10
    assert verify_kbasis(g, basis, 3).verdict


# ---------- 交差 1 つ ----------

@pytest.mark.parametrize("assignment", [(1, 1, 2, 2), (2, 1, 1, 2), (1, 2, 1, 2), (2, 1, 2, 1)])
def test_k4_assignment_respects_values(assignment):
    g = _k4_cycle_order()
    basis = k4_assignment_basis([0, 1, 2, 3], (4, 5), assignment)
    report = verify_kbasis(g, basis, 3)
    assert report.verdict
    for j in range(4):
        assert report.charge_of(j) <= assignment[j]


def test_assignment_must_be_two_ones_two_twos():
    with pytest.raises(PreconditionError):
        check_assignment((1, 1, 1, 2))
    with pytest.raises(PreconditionError):
        k4_assignment_basis([0, 1, 2, 3], (4, 5), (1, 2, 2, 2))


def test_poppy_assignment_on_crossed_c4():
    emb = crossed_c4()
    x = next(iter(emb.dummies))
    values = (1, 2, 1, 2)
    basis = poppy_assignment_basis(emb, x, values)
    report = verify_kbasis(emb.graph, basis, 3)
    assert report.verdict
    for walk, value in zip(skirt_walks(emb, x), values):
        for eid in walk.abstract_edges(emb):
            assert report.charge_of(eid) <= value


def test_poppy_assignment_basis_on_random_poppies():
    assignments = sorted(set(permutations((1, 1, 2, 2))))
    for seed in range(100):
        emb = random_poppy_embedding(random.Random(seed), n_max=16)
        for x in emb.dummies:
            if crossing_surrounding_cycle(emb, x) is None:
                continue
            walks = skirt_walks(emb, x)
            for values in assignments:
                basis = poppy_assignment_basis(emb, x, values)
                assert rank(basis) == 3, (seed, x, values)
                assert all(is_eulerian(emb.graph, s) for s in basis)
                ch = charges(emb.graph, basis)
                for walk, value in zip(walks, values):
                    # 歩道の辺はどれも同じ要素に入る
                    seen = {int(ch[eid]) for eid in walk.abstract_edges(emb)}
                    assert len(seen) == 1 and seen.pop() <= value, (seed, x, values)


# ---------- 3-基底 ----------

@pytest.mark.parametrize("build", [lambda: _fixture("k6"), cube_with_diagonals, crossed_c4])
def test_fullcrossing_3basis(build):
    emb = build()
    basis = fullcrossing_3basis(emb)
    assert verify_kbasis(emb.graph, basis, 3).verdict


def test_fullcrossing_low_charge_crossing_edge():
    emb = _fixture("k6")
    e, _ = next(iter(emb.dummies.values()))
    basis = fullcrossing_3basis(emb, low_charge_edge=e)
    assert verify_kbasis(emb.graph, basis, 3).verdict


def test_fullcrossing_rejects_poppy_only():
    with pytest.raises(PreconditionError):
        fullcrossing_3basis(_fixture("k34"))


def test_dual_orientation_balances_crossing_faces():
    emb = cube_with_diagonals()
    sk = emb.restrict(emb.skeleton().edge_ids)
    faces = [f.id for f in sk.faces]
    orientation = balanced_dual_orientation(sk, faces)
    for fid in faces:
        assert orientation.clockwise_count(sk, fid) == 2


@pytest.mark.parametrize("name", ["k34", "heawood"])
def test_poppy_3basis(name):
    emb = _fixture(name)
    orientation = balanced_skirt_orientation(emb)
    assert orientation is not None and orientation.is_balanced(emb)
    basis = poppy_3basis(emb, orientation)
    assert verify_kbasis(emb.graph, basis, 3).verdict


def test_petersen_drawing_has_no_balanced_orientation():
    assert balanced_skirt_orientation(_fixture("petersen")) is None


def test_skirt_orientation_needs_poppy():
    with pytest.raises(PreconditionError):
        balanced_skirt_orientation(_fixture("desargues"))


# ---------- 4-基底 / 8-基底 ----------

@pytest.mark.parametrize("name", ["k6", "k34", "heawood"])
def test_connected_skeleton_4basis(name):
    emb = _fixture(name)
    basis = connected_skeleton_4basis(emb)
    assert verify_kbasis(emb.graph, basis, 4).verdict


def test_connected_skeleton_4basis_on_catalog_drawings():
    checked = set()
    for entry in list_entries():
        if not (entry.table_flags or {}).get("connected_skeleton"):
            continue
        for key in sorted(entry.embeddings):
            emb = entry_embedding(entry.name, key)
            if not classify(emb).connected_skeleton:
                continue
            basis = connected_skeleton_4basis(emb)
            assert verify_kbasis(emb.graph, basis, 4).verdict, key
            checked.add(entry.name)
    # Hypercube4 の描画は交差 8 個で骨格が 2 成分 (test_catalog で確認)
    assert checked == {"K6", "K3,4", "Heawood"}


def test_connected_skeleton_4basis_needs_connected_skeleton():
    with pytest.raises(PreconditionError):
        connected_skeleton_4basis(_fixture("desargues"))


def test_connected_skeleton_4basis_random_poppies():
    for seed in range(100):
        emb = random_poppy_embedding(random.Random(seed), n_max=20)
        basis = connected_skeleton_4basis(emb)
        assert verify_kbasis(emb.graph, basis, 4).verdict, seed


def test_auxiliary_graph_of_two_rings():
    q = auxiliary_graph(_fixture("desargues"))
    assert (q.graph.n, q.graph.m) == (2, 12)
    for a, b in q.partner.items():
        assert q.partner[b] == a


def test_disconnected_skeleton_8basis():
    emb = _fixture("desargues")
    basis = disconnected_skeleton_8basis(emb)
    assert verify_kbasis(emb.graph, basis, 8).verdict


# ---------- デザルグ ----------

def test_desargues_3basis_charges():
    g, basis = desargues_3basis()
    assert (g.n, g.m) == (20, 30)
    report = verify_kbasis(g, basis, 3)
    assert report.verdict and len(basis) == 11
    outer = set(outer_cycle().ids())
    for eid in g.edge_ids:
        assert report.charge_of(eid) == (3 if eid in outer else 2)


def test_desargues_basis_is_not_a_2basis():
    g, basis = desargues_3basis()
    assert not verify_kbasis(g, basis, 2).verdict


def test_outer_cycle_needs_every_element():
    _, basis = desargues_3basis()
    assert decompose(outer_cycle(), basis) == list(range(11))


# ---------- ブローアップ ----------

def test_blowup_triangle_with_parallel_pair():
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0)])
    out_g, out_b, bound = blowup(g, [EdgeSet.of([0, 1, 2])], TerminalGraph.parallel_pair())
    assert bound == 2
    assert (out_g.n, out_g.m) == (3, 6)
    assert len(out_b) == betti(out_g) == 4
    assert verify_kbasis(out_g, out_b, 2).verdict


if __name__ == "__main__":
    test_planar_2basis_on_k4()
    test_skewness_basis_k5()
    test_poppy_assignment_on_crossed_c4()
    test_poppy_assignment_basis_on_random_poppies()
    test_poppy_3basis("k34")
    test_disconnected_skeleton_8basis()
    test_desargues_3basis_charges()
    test_blowup_triangle_with_parallel_pair()
    print("OK")
