"""
局所極大な 1-plane 埋め込みの描き直し (交差を増やさずに骨格を連結にする)。

交差 x の隣り合う 2 端点 r, p を結ぶ K4 の辺が骨格に無い (どこかで交差している) とき、
その辺を消して、x の r-p 間のセルの中に交差なしで描き直す。不動点まで繰り返す
(上限は辺数回)。

前提:
- セルの角は x の回転の順に調べ、最初に見つかった組を描き直す
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple

from src.embedding.analysis import classify, crossing_endpoints
from src.embedding.rotation import EmbeddingBuilder, OnePlaneEmbedding
from src.errors import PreconditionError

logger = logging.getLogger(__name__)


def _crossed_side(b: EmbeddingBuilder) -> Optional[Tuple[int, int, int, int]]:
    """描き直しが必要な (ダミー, r へのダート, p へのダート, 辺 ID) を 1 つ探す。"""
    crossed = {eid for pair in b.dummies.values() for eid in pair}
    for x in sorted(b.dummies):
        rot = b.rotation[x]
        for i, d_p in enumerate(rot):
            d_r = rot[i - 1]
            r, p = b.head(d_r), b.head(d_p)
            between = [eid for eid, (u, v) in sorted(b.edges.items()) if {u, v} == {r, p}]
            if not between or any(eid not in crossed for eid in between):
                continue
            return x, d_r, d_p, between[0]
    return None


def repair_locally_maximal(emb: OnePlaneEmbedding) -> OnePlaneEmbedding:
    """
    交差している K4 の辺を交差のセルに沿って描き直し、骨格を連結にする。

    Args:
        emb: 局所極大な 1-plane 埋め込み
    Returns:
        同じ抽象グラフ (辺 ID も同じ) の埋め込み。描き直しが不要ならそのまま返す
    Raises:
        PreconditionError: 局所極大でない / 上限回数で止まらない
    """
    if not classify(emb).locally_maximal:
        raise PreconditionError("embedding is not locally maximal")
    b = emb.builder()
    cap = emb.graph.m
    moved = 0
    while True:
        found = _crossed_side(b)
        if found is None:
            break
        if moved >= cap:
            raise PreconditionError(f"redrawing did not reach a fixpoint after {cap} moves")
        x, d_r, d_p, eid = found
        u, v = b.edges[eid]
        b.remove_edge(eid)
        # x→p を含むセルは r→x で閉じる。その直前のダートが r の角
        walk = b.face_walk(d_p)
        corner = {b.head(d_p): d_p, b.head(walk[-2]): walk[-2]}
        b.add_edge_in_face(u, corner[u], v, corner[v], eid=eid)
        moved += 1
        logger.debug(f"repair: edge {eid} redrawn uncrossed beside crossing {x}")
    out = b.freeze()
    if emb.outer_face is not None and moved == 0:
        out = out.with_outer_face(emb.outer_face)
    if moved:
        logger.info(f"repair_locally_maximal: {moved} edge(s) redrawn")
    return out
