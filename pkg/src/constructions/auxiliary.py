"""
補助グラフ Q と、Q に辺素な全域木が 3 本あるときの 8-基底。

Q の頂点は骨格の連結成分 (番号は components の順)。交差する 2 辺がどちらも
同じ 2 成分 X_i, X_j (i != j) を結ぶとき、Q に二重辺を足す。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List

from src.constructions.facial import connected_skeleton_4basis, union_cover_basis
from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.report import ensure_kbasis
from src.embedding.rotation import OnePlaneEmbedding
from src.errors import DisconnectedGraphError, PackingInfeasibleError
from src.graph.multigraph import Edge, Graph, components
from src.graph.packing import tree_packing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AuxiliaryGraph:
    graph: Graph
    back_map: Dict[int, int]
    partner: Dict[int, int]
    component_of: Dict[int, int] = field(repr=False)

    def abstract_edges(self, aux_edges) -> List[int]:
        return sorted(self.back_map[a] for a in aux_edges)


def auxiliary_graph(emb: OnePlaneEmbedding) -> AuxiliaryGraph:
    emb.check()
    g = emb.graph
    comps = components(emb.skeleton())
    component_of = {v: i for i, comp in enumerate(comps) for v in comp}
    edges: List[Edge] = []
    back_map: Dict[int, int] = {}
    partner: Dict[int, int] = {}
    for x, (e, f) in emb.dummies.items():
        ee, ff = g.edge(e), g.edge(f)
        ends_e = {component_of[ee.u], component_of[ee.v]}
        ends_f = {component_of[ff.u], component_of[ff.v]}
        if ends_e != ends_f or len(ends_e) != 2:
            continue
        i, j = sorted(ends_e)
        a = len(edges)
        edges.append(Edge(a, i, j))
        edges.append(Edge(a + 1, i, j))
        back_map[a], back_map[a + 1] = e, f
        partner[a], partner[a + 1] = a + 1, a
    q = Graph(range(len(comps)), edges)
    logger.debug(f"auxiliary graph: {q.n} vertices, {q.m} edges")
    return AuxiliaryGraph(q, back_map, partner, component_of)


def disconnected_skeleton_8basis(emb: OnePlaneEmbedding) -> List[EdgeSet]:
    """
    Q の 3 本の辺素な全域木 T1, T2, T3 を使う。G_i = G から T_i に対応する辺を除いたもの (i=1,2)
    はどちらも骨格が連結なので 4-基底を持ち、G1 ∩ G2 は連結。union_cover_basis で 8-基底にする。

    Raises:
        PackingInfeasibleError: Q に 3 本の辺素な全域木が無い
    """
    g = emb.graph
    q = auxiliary_graph(emb)
    if q.graph.n <= 1:
        basis = connected_skeleton_4basis(emb)
        ensure_kbasis(g, basis, 8, "disconnected_skeleton_8basis")
        return basis
    try:
        trees = tree_packing(q.graph, 3)
    except DisconnectedGraphError as e:
        raise PackingInfeasibleError(f"auxiliary graph is disconnected: {e}") from e
    if trees is None:
        raise PackingInfeasibleError(f"auxiliary graph ({q.graph.n} vertices, {q.graph.m} edges) has no 3 disjoint spanning trees")
    parts = []
    for tree in trees[:2]:
        removed = set(q.abstract_edges(tree))
        sub = emb.restrict(eid for eid in g.edge_ids if eid not in removed)
        parts.append((sub.graph, connected_skeleton_4basis(sub)))
    (g1, b1), (g2, b2) = parts
    basis = union_cover_basis(g, g1, g2, b1, b2)
    ensure_kbasis(g, basis, 8, "disconnected_skeleton_8basis")
    return basis
