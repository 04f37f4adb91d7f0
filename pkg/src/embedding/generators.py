"""
埋め込みの生成: 平面グラフからの回転系、面への交差の描き込み、テスト用の乱択生成。

設計:
- 平面性判定と回転は networkx.check_planarity に任せる。多重辺・ループがあっても
  扱えるよう、全辺を細分した単純グラフで判定して回転を読み戻す
- 乱択生成は random.Random を受け取り、同じシードなら同じ埋め込みを返す
"""

from __future__ import annotations

import logging
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from src.embedding.rotation import EmbeddingBuilder, Face, OnePlaneEmbedding
from src.errors import PreconditionError
from src.graph.multigraph import Graph

logger = logging.getLogger(__name__)


def from_plane_graph(g: Graph, outer: str = "longest") -> OnePlaneEmbedding:
    """
    平面グラフの平面埋め込みを作る。

    Args:
        g: 平面グラフ (ループ・多重辺可)
        outer: "longest" なら最長の面 (同長なら ID 最小) を外面にする。"none" なら球面モード

    Raises:
        PreconditionError: g が平面的でない
    """
    sub = nx.Graph()
    sub.add_nodes_from(("v", v) for v in g.vertices)
    ends: Dict[Tuple, Tuple[int, int]] = {}
    for e in g.edges:
        a, b = ("e", e.id, 0), ("e", e.id, 1)
        sub.add_edge(("v", e.u), a)
        sub.add_edge(a, b)
        sub.add_edge(b, ("v", e.v))
        ends[a] = (e.id, 0)
        ends[b] = (e.id, 1)
    planar, emb = nx.check_planarity(sub)
    if not planar:
        raise PreconditionError(f"graph with n={g.n}, m={g.m} is not planar")
    rotation = {}
    for v in g.vertices:
        rotation[v] = [ends[w] for w in emb.neighbors_cw_order(("v", v))] if sub.degree(("v", v)) else []
    out = EmbeddingBuilder.from_graph_rotation(g, rotation).freeze()
    if outer == "longest" and out.faces:
        longest = max(out.faces, key=lambda f: (len(f), -f.id))
        out = out.with_outer_face(longest.id)
    return out


def face_corners(emb: OnePlaneEmbedding, face: Face) -> List[Tuple[int, int]]:
    """面の角を走査順に (頂点, その頂点に到着するダート) で返す。"""
    darts = face.darts
    return [(emb.head(darts[i]), darts[i]) for i in range(len(darts))]


def add_face_crossings(emb: OnePlaneEmbedding, faces: Iterable[int]) -> OnePlaneEmbedding:
    """
    指定した 4-面 (面 ID) それぞれに 2 本の対角線を交差させて描き込む。
    面 ID は呼び出し時点の埋め込みでのもの。
    """
    targets = [emb.face(fid) for fid in faces]
    for f in targets:
        if len(f) != 4 or len(set(f.vertices)) != 4:
            raise PreconditionError(f"face {f.id} is not a simple 4-face")
        if f.crossed:
            raise PreconditionError(f"face {f.id} already contains a crossing")
    b = emb.builder()
    for f in targets:
        b.insert_crossing_in_face(face_corners(emb, f))
    out = b.freeze()
    if emb.outer_face is not None and emb.outer_face not in {f.id for f in targets}:
        out = out.with_outer_face(emb.outer_face)
    return out


def crossed_c4() -> OnePlaneEmbedding:
    """4-サイクルの内側の面に対角線を交差させた K4 (交差 1 個、外面は交差なし)。"""
    plane = from_plane_graph(Graph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0)]))
    inner = [f.id for f in plane.faces if f.id != plane.outer_face]
    return add_face_crossings(plane, inner[:1])


def cube_with_diagonals() -> OnePlaneEmbedding:
    """立方体の 6 面すべてに交差する対角線を入れた最適 1-平面グラフ (n=8, m=24)。"""
    cube = Graph.from_networkx(nx.convert_node_labels_to_integers(nx.hypercube_graph(3), ordering="sorted"))
    plane = from_plane_graph(cube, outer="none")
    return add_face_crossings(plane, [f.id for f in plane.faces])


# ---------- 乱択 ----------

def random_biconnected_plane(rng: random.Random, n_max: int = 50) -> OnePlaneEmbedding:
    """
    乱択の 2-連結平面埋め込み。サイクルから始めて、面の 2 つの角を結ぶ耳 (パス) を足していく。
    耳は既存の面の中に描くので平面性と 2-連結性が保たれる。
    """
    n0 = rng.randint(3, max(3, min(8, n_max)))
    b = EmbeddingBuilder()
    vs = [b.add_vertex() for _ in range(n0)]
    for i in range(n0):
        a, c = vs[i], vs[(i + 1) % n0]
        eid = b.next_edge
        b.next_edge += 1
        b.edges[eid] = (a, c)
        p = b.add_pedge(a, c, eid, 0)
        b.rotation[a].append(2 * p)
        b.rotation[c].append(2 * p + 1)
    n = n0
    ears = rng.randint(0, 2 * n_max)
    for _ in range(ears):
        if n >= n_max:
            break
        emb = b.freeze()
        face = rng.choice(emb.faces)
        corners = face_corners(emb, face)
        i, j = rng.sample(range(len(corners)), 2)
        (a, a_in), (c, c_in) = corners[i], corners[j]
        if a == c:
            continue
        length = rng.randint(1, 3)
        if length == 1 and _adjacent(b, a, c):
            length = 2
        eid = b.add_edge_in_face(a, a_in, c, c_in)
        for _ in range(length - 1):
            if n >= n_max:
                break
            _, eid = b.subdivide_edge(eid)
            n += 1
    out = b.freeze()
    longest = max(out.faces, key=lambda f: (len(f), -f.id))
    return out.with_outer_face(longest.id)


def _adjacent(b: EmbeddingBuilder, a: int, c: int) -> bool:
    return any({u, v} == {a, c} for u, v in b.edges.values())


def random_poppy_embedding(rng: random.Random, n_max: int = 30, crossing_rate: float = 0.5) -> OnePlaneEmbedding:
    """
    乱択の 1-平面埋め込み。2-連結平面グラフ (= 連結な骨格) の長さ 4 以上の面に、
    面の 4 つの角を結ぶ交差対を描き込む。すべての交差がポピーになる。
    """
    plane = random_biconnected_plane(rng, n_max)
    b = plane.builder()
    for face in plane.faces:
        if len(face) < 4 or rng.random() > crossing_rate:
            continue
        corners = face_corners(plane, face)
        idx = sorted(rng.sample(range(len(corners)), 4))
        b.insert_crossing_in_face([corners[i] for i in idx])
    return b.freeze()
