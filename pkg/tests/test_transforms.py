"""
基底を運ぶ辺操作、拡張 basis number、最大次数 3 の IC-planar 族。
"""

from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import fundamental_cycles
from src.cycle_space.report import charges, verify_kbasis
from src.embedding.analysis import classify
from src.errors import (CutoffExceeded, DisconnectedGraphError, InvalidBasisError, InvalidScheduleError,
                        PathCountMismatch, PreconditionError)
from src.graph.multigraph import Graph, betti, isomorphic
from src.search.bounds import apply_chain
from src.transforms.augmented import augmented_basis_number, candidate_paths
from src.transforms.edges import (add_edge_basis, contract_basis, duplicate_edge_basis, replace_edge_basis,
                                  subdivide_basis)
from src.transforms.terminal import (AugmentedBasis, TerminalGraph, check_augmented, is_st_path,
                                     parallel_pair_augmented, path_augmented)
from src.transforms.unbounded import (CrossingSchedule, check_schedule, circular_layout_schedule, degree_reduce,
                                      unbounded_family)

# K4: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3)
K4 = Graph.from_edge_list(list(combinations(range(4), 2)))
TRIANGLES = [EdgeSet.of([0, 1, 3]), EdgeSet.of([0, 2, 4]), EdgeSet.of([1, 2, 5])]


def _cycle(n: int) -> Graph:
    return Graph.from_edge_list([(i, (i + 1) % n) for i in range(n)])


# ---------- 辺操作 ----------

def test_triangle_basis_charges():
    report = verify_kbasis(K4, TRIANGLES, 2)
    assert report.verdict
    assert [report.charge_of(e) for e in K4.edge_ids] == [2, 2, 2, 1, 1, 1]


def test_contract_keeps_max_charge():
    g, b = contract_basis(K4, TRIANGLES, 0)
    assert g.n == 3 and g.m == 5
    assert verify_kbasis(g, b, 2).verdict


def test_contract_rejects_non_basis():
    with pytest.raises(InvalidBasisError):
        contract_basis(K4, TRIANGLES[:2], 0)


def test_add_edge_raises_charge_by_at_most_one():
    g, b = add_edge_basis(K4, TRIANGLES, 0, 1)
    assert g.m == 7 and len(b) == betti(g) == 4
    assert verify_kbasis(g, b, 3).verdict


def test_add_edge_needs_connected_graph():
    g = Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (3, 4)])
    with pytest.raises(DisconnectedGraphError):
        add_edge_basis(g, [EdgeSet.of([0, 1, 2])], 0, 3)


def test_subdivide_copies_charge():
    g, b = subdivide_basis(K4, TRIANGLES, 3)
    assert (g.n, g.m) == (5, 7)
    report = verify_kbasis(g, b, 2)
    assert report.verdict
    fresh = max(g.edge_ids)
    assert report.charge_of(fresh) == report.charge_of(3) == 1


def test_duplicate_keeps_edge_id():
    g, b = duplicate_edge_basis(K4, TRIANGLES, 0)
    assert g.has_edge(0) and g.m == 7
    assert verify_kbasis(g, b, 2).verdict


def test_replace_edge_with_parallel_pair():
    ab = parallel_pair_augmented(2)
    g, b = replace_edge_basis(K4, TRIANGLES, 0, TerminalGraph.parallel_pair(), ab)
    assert not g.has_edge(0) and g.m == 7
    assert verify_kbasis(g, b, 2).verdict


def test_replace_edge_path_count_mismatch():
    with pytest.raises(PathCountMismatch):
        replace_edge_basis(K4, TRIANGLES, 0, TerminalGraph.parallel_pair(), parallel_pair_augmented(1))


def _random_connected(rng: random.Random, n_max: int = 7, extra_max: int = 6) -> Graph:
    n = rng.randint(2, n_max)
    pairs = [(rng.randrange(v), v) for v in range(1, n)]
    pairs += [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(1, extra_max))]
    return Graph.from_edge_list(pairs, n)


def test_random_transforms_keep_charge_bounds():
    rng = random.Random(11)
    for trial in range(500):
        g = _random_connected(rng)
        b = fundamental_cycles(g)
        before = verify_kbasis(g, b, 0).max_charge
        plain = [e.id for e in g.edges if not e.is_loop]
        op = rng.choice(["contract", "add", "subdivide", "replace"])
        if op == "contract":
            out_g, out = contract_basis(g, b, rng.choice(g.edge_ids))
            assert verify_kbasis(out_g, out, before).verdict, trial
        elif op == "add":
            u, v = rng.sample(list(g.vertices), 2)
            out_g, out = add_edge_basis(g, b, u, v)
            assert verify_kbasis(out_g, out, before + 1).verdict, trial
        elif op == "subdivide":
            eid = rng.choice(plain)
            out_g, out = subdivide_basis(g, b, eid)
            old, new = charges(g, b), charges(out_g, out)
            assert all(new[x] == old[x] for x in g.edge_ids), trial
            assert new[max(out_g.edge_ids)] == old[eid], trial
        else:
            eid = rng.choice(plain)
            ab = parallel_pair_augmented(sum(1 for s in b if eid in s))
            out_g, out = replace_edge_basis(g, b, eid, TerminalGraph.parallel_pair(), ab)
            assert verify_kbasis(out_g, out, max(before, ab.k)).verdict, trial


# ---------- 端子付きグラフ ----------

def test_terminal_graph_preconditions():
    with pytest.raises(PreconditionError):
        TerminalGraph(_cycle(4), 1, 1)
    with pytest.raises(PreconditionError):
        TerminalGraph(_cycle(4), 0, 9)
    with pytest.raises(PreconditionError):
        TerminalGraph.path(0)


def test_is_st_path():
    g = _cycle(4)
    assert is_st_path(g, EdgeSet.of([0, 1]), 0, 2)
    assert not is_st_path(g, EdgeSet.of([0, 2]), 0, 2)
    assert not is_st_path(g, EdgeSet.of([0, 1, 2, 3]), 0, 2)


def test_check_augmented_rejects_overcharge():
    h = TerminalGraph.parallel_pair()
    with pytest.raises(InvalidBasisError):
        check_augmented(h, AugmentedBasis([EdgeSet.of([0, 1])], [EdgeSet.of([0])] * 2, 2))


def test_path_augmented():
    h = TerminalGraph.path(3)
    ab = path_augmented(h, 4)
    check_augmented(h, ab)
    assert ab.k == 4 and ab.basis == []


def test_candidate_paths_order():
    h = TerminalGraph(K4, 0, 3)
    paths = candidate_paths(h, 100)
    assert len(paths) == 5
    assert paths[0] == EdgeSet.of([2])
    assert [len(p) for p in paths] == sorted(len(p) for p in paths)


# ---------- 拡張 basis number ----------

@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_exact_parallel_pair_matches_closed_form(ell):
    h = TerminalGraph.parallel_pair()
    ab = augmented_basis_number(h, ell)
    assert ab.k == 1 + (ell + 1) // 2 == parallel_pair_augmented(ell).k
    check_augmented(h, ab)


def test_exact_and_planar_outer_agree_on_cycle():
    h = TerminalGraph(_cycle(4), 0, 2)
    exact = augmented_basis_number(h, 2, mode="exact")
    outer = augmented_basis_number(h, 2, mode="planar_outer")
    assert exact.k == outer.k == 2
    assert len(outer.paths) == 2


def test_planar_outer_limits():
    h = TerminalGraph(_cycle(4), 0, 2)
    with pytest.raises(PreconditionError):
        augmented_basis_number(h, 3, mode="planar_outer")
    with pytest.raises(PreconditionError):
        augmented_basis_number(TerminalGraph.path(2), 1, mode="planar_outer")
    with pytest.raises(PreconditionError):
        augmented_basis_number(h, 1, mode="nearest")
    with pytest.raises(PreconditionError):
        augmented_basis_number(h, -1)


def test_exact_cutoff_on_large_betti():
    g = Graph.from_networkx(nx.complete_graph(6))
    with pytest.raises(CutoffExceeded):
        augmented_basis_number(TerminalGraph(g, 0, 1), 1)


# ---------- 最大次数 3 の IC-planar 族 ----------

def test_degree_reduce_k5():
    g = Graph.from_networkx(nx.complete_graph(5))
    reduced, records = degree_reduce(g)
    assert reduced.max_degree() <= 3
    assert len(records) == 5
    chain = [("contract", r.new_edge) for r in reversed(records)]
    assert isomorphic(apply_chain(reduced, chain), g)


def test_circular_schedule_k4():
    schedule = circular_layout_schedule(K4, [0, 1, 2, 3])
    assert schedule.count == 1
    assert list(schedule.pairs().values()) == [(1, 4)]
    check_schedule(K4, schedule)


def test_schedule_rejects_lonely_crossing():
    with pytest.raises(InvalidScheduleError):
        check_schedule(K4, CrossingSchedule((0, 1, 2, 3), {1: (0,)}))
    with pytest.raises(InvalidScheduleError):
        check_schedule(K4, CrossingSchedule((0, 1, 2, 3), {0: (0,), 5: (0,)}))


@pytest.mark.parametrize("n", [5, 6])
def test_unbounded_family_complete_graph(n):
    g = Graph.from_networkx(nx.complete_graph(n))
    member = unbounded_family(g, ell=3)
    assert member.graph.max_degree() <= 3
    assert member.embedding.validate() == []
    profile = classify(member.embedding)
    assert profile.ic
    assert profile.crossings == member.schedule.count
    assert isomorphic(apply_chain(member.graph, member.chain), g)
    assert member.claimed_lower_bound == 3


def test_unbounded_family_random_dense_graphs():
    done = 0
    for seed in range(10):
        nxg = nx.dense_gnm_random_graph(8, 20, seed=seed)
        if not nx.is_connected(nxg):
            continue
        g = Graph.from_networkx(nxg)
        member = unbounded_family(g)
        assert member.graph.max_degree() <= 3
        assert member.embedding.validate() == []
        assert classify(member.embedding).ic
        assert isomorphic(apply_chain(member.graph, member.chain), g)
        done += 1
    assert done > 0


if __name__ == "__main__":
    test_triangle_basis_charges()
    test_contract_keeps_max_charge()
    test_replace_edge_with_parallel_pair()
    test_random_transforms_keep_charge_bounds()
    test_exact_and_planar_outer_agree_on_cycle()
    test_degree_reduce_k5()
    test_unbounded_family_complete_graph(5)
    print("OK")
