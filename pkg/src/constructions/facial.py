"""
面から作る基底: 平面グラフの 2-基底、和集合の被覆、骨格が連結な 1-plane グラフの 4-基底、歪度による上界。

設計:
- 面の境界は辺 ID の XOR で持つ (橋を 2 回通っても打ち消し合う)
- 平面化の連結成分ごとに 1 面を除く。除く面は外面 > 指定された面 > 最長の面 (同長なら ID 最小)
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import extract_basis
from src.cycle_space.report import ensure_kbasis, verify_kbasis
from src.embedding.rotation import OnePlaneEmbedding
from src.errors import InvalidBasisError, PreconditionError
from src.graph.multigraph import Graph, components, is_connected, is_two_connected
from src.transforms.edges import add_edge_basis

logger = logging.getLogger(__name__)


def facial_cycles(emb: OnePlaneEmbedding) -> Dict[int, EdgeSet]:
    """面 ID -> 面の境界 (抽象辺 ID の XOR)。交差のない埋め込み用。"""
    return {f.id: EdgeSet.of(emb.segments[d >> 1][0] for d in f.darts) for f in emb.faces}


def facial_basis(emb: OnePlaneEmbedding, omit: Optional[int] = None) -> List[EdgeSet]:
    """
    交差のない埋め込みで、成分ごとに 1 面を除いた面の境界 (面 ID 順)。

    Args:
        emb: 平面埋め込み
        omit: 外面が無い成分で除きたい面 ID
    """
    if emb.dummies:
        raise PreconditionError(f"embedding has {len(emb.dummies)} crossing(s); a plane embedding is required")
    comp_of = {}
    for i, comp in enumerate(components(emb.planarization())):
        for v in comp:
            comp_of[v] = i
    by_comp: Dict[int, list] = {}
    for f in emb.faces:
        by_comp.setdefault(comp_of[f.vertices[0]], []).append(f)
    dropped = set()
    for faces in by_comp.values():
        ids = {f.id for f in faces}
        if emb.outer_face in ids:
            dropped.add(emb.outer_face)
        elif omit in ids:
            dropped.add(omit)
        else:
            dropped.add(max(faces, key=lambda f: (len(f), -f.id)).id)
    cycles = facial_cycles(emb)
    return [cycles[fid] for fid in sorted(cycles) if fid not in dropped]


def planar_2basis(emb: OnePlaneEmbedding) -> List[EdgeSet]:
    """
    2-連結平面グラフの外面以外の面の境界。charge は 2 以下、外面の辺はちょうど 1。
    外面が無い (球面モード) ときは最長の面を外面とみなす。

    Raises:
        PreconditionError: 交差がある / 2-連結でない
        InvalidBasisError: 監査に失敗した
    """
    g = emb.graph
    if emb.dummies:
        raise PreconditionError("planar_2basis needs a plane embedding (no crossings)")
    if not is_two_connected(g):
        raise PreconditionError("planar_2basis needs a 2-connected graph")
    if emb.outer_face is None:
        outer = max(emb.faces, key=lambda f: (len(f), -f.id)).id
        emb = emb.with_outer_face(outer)
    basis = facial_basis(emb)
    report = ensure_kbasis(g, basis, 2, "planar_2basis")
    outer_edges = facial_cycles(emb)[emb.outer_face]
    bad = [eid for eid in outer_edges if report.charge_of(eid) != 1]
    if bad:
        raise InvalidBasisError(f"planar_2basis: outer-face edges {bad} do not have charge 1", report)
    return basis


def union_cover_basis(g: Graph, g1: Graph, g2: Graph, b1: Sequence[EdgeSet], b2: Sequence[EdgeSet]) -> List[EdgeSet]:
    """
    g = g1 ∪ g2 で g1 ∩ g2 が全域かつ連結なとき、b1 ∪ b2 から g の基底を抜き出す。
    最大 charge は b1 と b2 の最大 charge の和以下。

    Raises:
        PreconditionError: 被覆の条件を満たさない
        InvalidBasisError: b1 / b2 が基底でない
    """
    ids1, ids2 = set(g1.edge_ids), set(g2.edge_ids)
    if ids1 | ids2 != set(g.edge_ids):
        raise PreconditionError("g1 and g2 do not cover the edges of g")
    for part in (g1, g2):
        for e in part.edges:
            if not g.has_edge(e.id) or {g.edge(e.id).u, g.edge(e.id).v} != {e.u, e.v}:
                raise PreconditionError(f"edge {e.id} of a part does not match g")
    common = g.edge_subgraph(ids1 & ids2)
    if not is_connected(common):
        raise PreconditionError("g1 ∩ g2 is not spanning and connected")
    bounds = []
    for name, part, basis in (("b1", g1, b1), ("b2", g2, b2)):
        report = verify_kbasis(part, basis, 0)
        if not (report.eulerian and report.independent and report.generates):
            raise InvalidBasisError(f"union_cover_basis: {name} is not a basis of its part", report)
        bounds.append(report.max_charge)
    out = extract_basis(g, list(b1) + list(b2))
    ensure_kbasis(g, out, sum(bounds), "union_cover_basis")
    return out


def connected_skeleton_4basis(emb: OnePlaneEmbedding) -> List[EdgeSet]:
    """
    骨格が連結な 1-plane グラフの 4-基底。
    G1 = 骨格 + 各交差の 1 本目、G2 = 骨格 + 2 本目 はどちらも平面なので、
    それぞれの面の 2-基底を union_cover_basis で合わせる。

    Raises:
        PreconditionError: 骨格が連結でない
    """
    g = emb.graph
    sk = emb.skeleton()
    if not is_connected(sk):
        raise PreconditionError("connected_skeleton_4basis needs a connected skeleton")
    if not emb.dummies:
        basis = facial_basis(emb)
        ensure_kbasis(g, basis, 2, "connected_skeleton_4basis (plane)")
        return basis
    firsts = [e for e, _ in emb.dummies.values()]
    seconds = [f for _, f in emb.dummies.values()]
    emb1 = emb.restrict(sk.edge_ids + firsts)
    emb2 = emb.restrict(sk.edge_ids + seconds)
    b1 = facial_basis(emb1)
    b2 = facial_basis(emb2)
    ensure_kbasis(emb1.graph, b1, 2, "connected_skeleton_4basis (first crossing edges)")
    ensure_kbasis(emb2.graph, b2, 2, "connected_skeleton_4basis (second crossing edges)")
    out = union_cover_basis(g, emb1.graph, emb2.graph, b1, b2)
    ensure_kbasis(g, out, 4, "connected_skeleton_4basis")
    return out


def skewness_basis(emb: OnePlaneEmbedding, extra: Sequence[Tuple[int, int]]) -> Tuple[Graph, List[EdgeSet]]:
    """
    連結な平面グラフ G - F の面の基底に、F の辺を 1 本ずつ足して (2 + |F|)-基底を作る。

    Args:
        emb: G - F の平面埋め込み
        extra: F の辺 (端点の組)
    Returns:
        (G, 基底)。F の辺には新しい辺 ID が振られる
    """
    g = emb.graph
    if not is_connected(g):
        raise PreconditionError("skewness_basis needs a connected plane part")
    basis = facial_basis(emb)
    ensure_kbasis(g, basis, 2, "skewness_basis (plane part)")
    for u, v in extra:
        g, basis = add_edge_basis(g, basis, u, v)
    ensure_kbasis(g, basis, 2 + len(extra), "skewness_basis")
    return g, basis
