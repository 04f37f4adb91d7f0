"""
骨格の向き付け: 双対グラフ経由の向き (全交差が full のとき) と、
スカート歩道のバランスの取れた向き (ポピー一般、制約伝播 + バックトラック)。

設計:
- 向きは辺 ID -> +1 (u→v) / -1 (v→u)。向いたダートを含む面にとって、その辺は「時計回り」
- 歩道が時計回り = 歩道のダートがすべて向いたダート
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from src.data_loader import search_defaults
from src.embedding.analysis import SkirtWalk, classify, skirt_walks
from src.embedding.rotation import OnePlaneEmbedding
from src.errors import CutoffExceeded, PreconditionError

logger = logging.getLogger(__name__)

_PAD = -1


@dataclass(frozen=True)
class BalancedOrientation:
    sign: Dict[int, int]

    def oriented_dart(self, emb: OnePlaneEmbedding, eid: int) -> int:
        p = emb.edge_segments[eid][0]
        return 2 * p if self.sign.get(eid, 1) > 0 else 2 * p + 1

    def reversed(self) -> "BalancedOrientation":
        return BalancedOrientation({eid: -s for eid, s in self.sign.items()})

    def walk_clockwise(self, emb: OnePlaneEmbedding, walk: SkirtWalk) -> Optional[bool]:
        """歩道全体が時計回りなら True、全体が反時計回りなら False、混在なら None。"""
        hits = {self.oriented_dart(emb, emb.segments[d >> 1][0]) == d for d in walk.darts}
        return hits.pop() if len(hits) == 1 else None

    def pattern(self, emb: OnePlaneEmbedding, x: int) -> Tuple[Optional[bool], ...]:
        return tuple(self.walk_clockwise(emb, w) for w in skirt_walks(emb, x))

    def is_balanced(self, emb: OnePlaneEmbedding) -> bool:
        for x in emb.dummies:
            pat = self.pattern(emb, x)
            if None in pat or sum(pat) != 2:
                return False
        return True

    def clockwise_count(self, emb: OnePlaneEmbedding, fid: int) -> int:
        face = emb.face(fid)
        return sum(1 for d in face.darts if self.oriented_dart(emb, emb.segments[d >> 1][0]) == d)


def balanced_dual_orientation(sk: OnePlaneEmbedding, faces: Iterable[int]) -> BalancedOrientation:
    """
    双対グラフを各頂点の入次数・出次数が ceil(deg/2) 以下になるよう向き付け、
    双対辺の始点側の面に属するダートを骨格の辺の向きにする。
    奇数次の双対頂点は補助頂点につないでからオイラー閉路を取り、補助辺は捨てる。

    Args:
        sk: 骨格の平面埋め込み
        faces: 時計回り 2 本・反時計回り 2 本にしたい 4-面の ID

    Raises:
        PreconditionError: 交差がある / 指定の面が単純な 4-サイクルでない
    """
    if sk.dummies:
        raise PreconditionError("balanced_dual_orientation needs a plane embedding")
    targets = list(faces)
    for fid in targets:
        f = sk.face(fid)
        if len(f) != 4 or len(set(f.vertices)) != 4:
            raise PreconditionError(f"face {fid} is not a 4-cycle face")

    dual = nx.MultiGraph()
    dual.add_nodes_from(f.id for f in sk.faces)
    for p, (eid, _) in sk.segments.items():
        dual.add_edge(sk.face_of(2 * p).id, sk.face_of(2 * p + 1).id, key=eid)
    odd = sorted(v for v in dual.nodes if dual.degree(v) % 2)
    for i, v in enumerate(odd):
        dual.add_edge(_PAD, v, key=-1 - i)

    sign: Dict[int, int] = {}
    for comp in sorted(nx.connected_components(dual), key=min):
        sub = dual.subgraph(comp)
        if sub.number_of_edges() == 0:
            continue
        for a, _, eid in nx.eulerian_circuit(sub, source=min(comp), keys=True):
            if eid < 0:
                continue
            p = sk.edge_segments[eid][0]
            sign[eid] = 1 if sk.face_of(2 * p).id == a else -1
    out = BalancedOrientation(sign)
    for fid in targets:
        cw = out.clockwise_count(sk, fid)
        if cw != 2:
            raise PreconditionError(f"face {fid} got {cw} clockwise edges")
    logger.debug(f"balanced_dual_orientation: {len(sign)} edges oriented, {len(targets)} faces balanced")
    return out


# ---------- スカート歩道 ----------

def _from_walk_values(emb: OnePlaneEmbedding, walks: Dict[int, List[SkirtWalk]],
                      values: Dict[Tuple[int, int], bool]) -> BalancedOrientation:
    sign = {eid: 1 for eid in emb.skeleton().edge_ids}
    for (x, i), cw in values.items():
        for d in walks[x][i].darts:
            od = d if cw else d ^ 1
            sign[emb.segments[od >> 1][0]] = 1 if od % 2 == 0 else -1
    return BalancedOrientation(sign)


def balanced_skirt_orientation(emb: OnePlaneEmbedding) -> Optional[BalancedOrientation]:
    """
    ポピー 1-plane グラフのスカート歩道のバランスの取れた向き。存在しなければ None (厳密)。

    辺を共有する 2 本の歩道は逆向き (時計回りかどうかが異なる)。交差ごとに 2/2 の型を選び、
    制約の多い交差から順に決めて、強制された歩道を伝播する。
    スカート歩道が near-independent なら制約が無いので探索しない。

    Raises:
        PreconditionError: ポピーでない
        CutoffExceeded: 探索ノード数が上限を超えた
    """
    profile = classify(emb)
    if not profile.poppy:
        raise PreconditionError("balanced_skirt_orientation needs a poppy embedding")
    walks = {x: skirt_walks(emb, x) for x in emb.dummies}
    if profile.near_independent_skirts:
        values = {(x, i): i < 2 for x in walks for i in range(4)}
        return _from_walk_values(emb, walks, values)

    owner: Dict[int, Tuple[int, int]] = {}
    for x, ws in walks.items():
        for i, w in enumerate(ws):
            for d in w.darts:
                owner[d] = (x, i)
    differ: Dict[Tuple[int, int], List[Tuple[int, int]]] = {(x, i): [] for x in walks for i in range(4)}
    for d, var in owner.items():
        other = owner.get(d ^ 1)
        if other is None:
            continue
        if other == var:
            logger.info(f"skirt walk {var} uses an edge in both directions; no balanced orientation")
            return None
        differ[var].append(other)

    order = sorted(walks, key=lambda x: (-sum(len(differ[(x, i)]) for i in range(4)), x))
    max_nodes = search_defaults()["orientation"]["max_nodes"]
    values: Dict[Tuple[int, int], bool] = {}
    nodes = 0

    def consistent(x: int) -> bool:
        got = [values[(x, i)] for i in range(4) if (x, i) in values]
        return sum(got) <= 2 and len(got) - sum(got) <= 2

    def assign(var: Tuple[int, int], val: bool, trail: List[Tuple[int, int]]) -> bool:
        queue = [(var, val)]
        while queue:
            v, b = queue.pop()
            if v in values:
                if values[v] != b:
                    return False
                continue
            values[v] = b
            trail.append(v)
            if not consistent(v[0]):
                return False
            queue.extend((w, not b) for w in differ[v])
        return True

    def solve(idx: int) -> bool:
        nonlocal nodes
        if idx == len(order):
            return True
        x = order[idx]
        for ones in combinations(range(4), 2):
            nodes += 1
            if nodes > max_nodes:
                raise CutoffExceeded(f"balanced orientation search exceeded {max_nodes} nodes")
            trail: List[Tuple[int, int]] = []
            ok = all(assign((x, i), i in ones, trail) for i in range(4))
            if ok and solve(idx + 1):
                return True
            for v in trail:
                del values[v]
        return False

    if not solve(0):
        logger.info(f"balanced_skirt_orientation: infeasible after {nodes} nodes")
        return None
    out = _from_walk_values(emb, walks, values)
    logger.debug(f"balanced_skirt_orientation: found after {nodes} nodes")
    return out
