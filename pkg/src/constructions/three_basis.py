"""
full-crossing / ポピー 1-plane グラフの 3-基底。

骨格 (球面とみなす) の全面の境界から交差を囲む面を除き、交差ごとの 3 サイクルを足して
生成系を作り、先着順に基底を抜き出す。交差 x の 3 サイクルは、時計回りの歩道に 1、
反時計回りに 2 を割り当てたポピーの基底。
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional

from src.constructions.crossing_bases import poppy_assignment_basis
from src.constructions.facial import facial_cycles
from src.constructions.orientation import BalancedOrientation, balanced_dual_orientation
from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import extract_basis
from src.cycle_space.report import ensure_kbasis, verify_kbasis
from src.embedding.analysis import classify, skirt_walks
from src.embedding.rotation import OnePlaneEmbedding
from src.errors import PreconditionError
from src.graph.multigraph import is_two_connected

logger = logging.getLogger(__name__)


def _skeleton_embedding(emb: OnePlaneEmbedding) -> OnePlaneEmbedding:
    return emb.restrict(emb.skeleton().edge_ids)


def crossing_faces(emb: OnePlaneEmbedding, sk: OnePlaneEmbedding) -> Dict[int, int]:
    """交差 -> それを囲む骨格の面 ID。骨格の pedge ID は元の埋め込みと同じ。"""
    out: Dict[int, int] = {}
    for x in emb.dummies:
        fids = {sk.face_of(w.darts[0]).id for w in skirt_walks(emb, x)}
        if len(fids) != 1:
            raise PreconditionError(f"skirt walks of crossing {x} do not bound a single skeleton face")
        fid = fids.pop()
        if fid in out.values():
            raise PreconditionError(f"skeleton face {fid} surrounds more than one crossing")
        out[x] = fid
    return out


def _assemble(emb: OnePlaneEmbedding, sk: OnePlaneEmbedding, faces: Dict[int, int],
              orientation: BalancedOrientation, omit: Optional[int] = None) -> List[EdgeSet]:
    surrounding = set(faces.values())
    cycles = facial_cycles(sk)
    generating = [c for fid, c in sorted(cycles.items()) if fid not in surrounding and fid != omit]
    for x in sorted(emb.dummies):
        values = tuple(1 if cw else 2 for cw in orientation.pattern(emb, x))
        generating.extend(poppy_assignment_basis(emb, x, values))
    return extract_basis(emb.graph, generating)


def _single_uncrossed_cell(emb: OnePlaneEmbedding, sk: OnePlaneEmbedding, eid: int) -> Optional[int]:
    p = emb.edge_segments[eid][0]
    cells = [emb.face_of(d) for d in (2 * p, 2 * p + 1)]
    plain = [c for c in cells if not c.crossed]
    if len(plain) != 1:
        return None
    return sk.face_of(plain[0].darts[0]).id


def _build(emb: OnePlaneEmbedding, orientation: BalancedOrientation, what: str,
           low_charge_edge: Optional[int]) -> List[EdgeSet]:
    g = emb.graph
    sk = _skeleton_embedding(emb)
    faces = crossing_faces(emb, sk)
    candidates = [(orientation, None), (orientation.reversed(), None)]
    if low_charge_edge is not None:
        if not g.has_edge(low_charge_edge):
            raise PreconditionError(f"unknown edge {low_charge_edge}")
        if low_charge_edge not in emb.crossed_edges:
            omit = _single_uncrossed_cell(emb, sk, low_charge_edge)
            candidates = [(o, omit) for o, _ in candidates] if omit is not None else []
        for o, omit in candidates:
            try:
                basis = _assemble(emb, sk, faces, o, omit)
            except PreconditionError:
                continue
            if verify_kbasis(g, basis, 3).charge_of(low_charge_edge) <= 1:
                ensure_kbasis(g, basis, 3, what)
                return basis
        logger.warning(f"{what}: cannot bring edge {low_charge_edge} to charge 1; building without it")
    basis = _assemble(emb, sk, faces, orientation)
    ensure_kbasis(g, basis, 3, what)
    return basis


def fullcrossing_3basis(emb: OnePlaneEmbedding, low_charge_edge: Optional[int] = None) -> List[EdgeSet]:
    """
    2-連結な full-crossing 1-plane グラフの 3-基底。向きは骨格の双対から作る。

    Args:
        emb: 全交差が full な 1-plane 埋め込み
        low_charge_edge: charge 1 以下にしたい辺 (交差辺か、交差しないセルにちょうど 1 つ接する辺)

    Raises:
        PreconditionError: full-crossing でない / 2-連結でない
    """
    if not classify(emb).full_crossing:
        raise PreconditionError("fullcrossing_3basis needs a full-crossing embedding")
    if not is_two_connected(emb.graph):
        raise PreconditionError("fullcrossing_3basis needs a 2-connected graph")
    sk = _skeleton_embedding(emb)
    orientation = balanced_dual_orientation(sk, crossing_faces(emb, sk).values())
    return _build(emb, orientation, "fullcrossing_3basis", low_charge_edge)


def poppy_3basis(emb: OnePlaneEmbedding, orientation: BalancedOrientation,
                 low_charge_edge: Optional[int] = None) -> List[EdgeSet]:
    """
    バランスの取れた向きを持つポピー 1-plane グラフの 3-基底。

    Raises:
        PreconditionError: ポピーでない / 向きがバランスしていない
    """
    if not classify(emb).poppy:
        raise PreconditionError("poppy_3basis needs a poppy embedding")
    if not orientation.is_balanced(emb):
        raise PreconditionError("orientation is not balanced for this embedding")
    return _build(emb, orientation, "poppy_3basis", low_charge_edge)
