"""
次数の削減と細分で、任意のグラフから最大次数 3 の IC-planar な 1-plane グラフを作る。

設計:
- 描画は円周上の直線描画 (頂点を指定順に円周に並べる)。交差は弦の組が交互に並ぶときだけ起こる
- 連続する交差の間に細分頂点を per_gap 個 (既定 2) 入れる。端点を複数の交差が共有するときは
  端点と最初の交差の間にも 1 個入れる。per_gap >= 2 なら出力は IC-planar
- 新しい辺は縮約の連鎖として記録し、連鎖を適用すると元のグラフに (頂点の名前を除いて) 戻る
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.embedding.rotation import EmbeddingBuilder, OnePlaneEmbedding
from src.errors import InvalidScheduleError, PreconditionError
from src.graph.multigraph import Graph, vertex_split
from src.search.bounds import ChainStep

logger = logging.getLogger(__name__)

_GOLDEN = (np.sqrt(5.0) - 1) / 2


@dataclass(frozen=True)
class CrossingSchedule:
    """
    Args:
        order: 円周上の頂点の並び
        crossings: 辺 ID -> その辺上の交差ラベル (u 側から v 側への順)。交差の無い辺は省略
    """

    order: Tuple[int, ...]
    crossings: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return sum(len(v) for v in self.crossings.values()) // 2

    def pairs(self) -> Dict[int, Tuple[int, int]]:
        """交差ラベル -> 交差する 2 辺 (ID 昇順)。"""
        seen: Dict[int, List[int]] = {}
        for eid in sorted(self.crossings):
            for label in self.crossings[eid]:
                seen.setdefault(label, []).append(eid)
        return {label: tuple(sorted(edges)) for label, edges in seen.items()}

    def to_dict(self) -> Dict:
        return {"order": list(self.order), "crossings": {str(k): list(v) for k, v in sorted(self.crossings.items())}}


# ---------- 円周の直線描画 ----------

def _circle_positions(order: Sequence[int]) -> Dict[int, np.ndarray]:
    """円周上の位置。等間隔からずらして、3 本の弦が 1 点で交わらないようにする。"""
    n = len(order)
    steps = np.arange(n)
    angles = 2 * np.pi * (steps + 0.4 * np.mod(steps * _GOLDEN, 1.0)) / max(n, 1)
    points = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return {v: points[i] for i, v in enumerate(order)}


def _intersection(p: np.ndarray, q: np.ndarray, r: np.ndarray, s: np.ndarray) -> Tuple[float, float]:
    """線分 pq と rs の交点のパラメータ (pq 上の t, rs 上の u)。"""
    a = np.column_stack([q - p, r - s])
    t, u = np.linalg.solve(a, r - p)
    return float(t), float(u)


def _check_drawable(g: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(g.vertices):
        raise InvalidScheduleError("vertex order must list every vertex exactly once")
    if not g.is_simple():
        raise PreconditionError("a straight-line circular drawing needs a simple graph")


def circular_layout_schedule(g: Graph, order: Optional[Sequence[int]] = None) -> CrossingSchedule:
    """
    頂点を order の順に円周に並べた直線描画の交差。交差ラベルは (e, f) の辞書順に 0 から振る。

    Args:
        order: 頂点の並び。None なら頂点 ID の昇順

    Raises:
        PreconditionError: 単純グラフでない
        InvalidScheduleError: order が頂点の並べ替えでない
    """
    order = tuple(g.vertices if order is None else order)
    _check_drawable(g, order)
    index = {v: i for i, v in enumerate(order)}
    pos = _circle_positions(order)
    chords = {e.id: tuple(sorted((index[e.u], index[e.v]))) for e in g.edges}
    ids = sorted(chords)
    along: Dict[int, List[Tuple[float, int]]] = {}
    label = 0
    for i, e in enumerate(ids):
        a, b = chords[e]
        for f in ids[i + 1:]:
            c, d = chords[f]
            if not (a < c < b < d or c < a < d < b):
                continue
            ee, ff = g.edge(e), g.edge(f)
            t, u = _intersection(pos[ee.u], pos[ee.v], pos[ff.u], pos[ff.v])
            along.setdefault(e, []).append((t, label))
            along.setdefault(f, []).append((u, label))
            label += 1
    crossings = {eid: tuple(lab for _, lab in sorted(items)) for eid, items in along.items()}
    out = CrossingSchedule(order, crossings)
    logger.debug(f"circular layout: {out.count} crossings over {len(crossings)} edges")
    return out


def check_schedule(g: Graph, schedule: CrossingSchedule) -> None:
    """
    Raises:
        InvalidScheduleError: 交差が 2 辺のちょうど 2 か所で名指しされていない / 描画と食い違う
    """
    for eid, labels in schedule.crossings.items():
        if not g.has_edge(eid):
            raise InvalidScheduleError(f"schedule names unknown edge {eid}")
        if len(set(labels)) != len(labels):
            raise InvalidScheduleError(f"edge {eid} lists a crossing twice")
    counts: Dict[int, int] = {}
    for labels in schedule.crossings.values():
        for label in labels:
            counts[label] = counts.get(label, 0) + 1
    bad = sorted(label for label, c in counts.items() if c != 2)
    if bad:
        raise InvalidScheduleError(f"crossings {bad[:5]} are not named by exactly two edges")
    if circular_layout_schedule(g, schedule.order).pairs() != schedule.pairs():
        raise InvalidScheduleError("schedule does not match the circular drawing of its vertex order")


# ---------- 細分して 1-plane へ ----------

def _direction_angle(vec: np.ndarray) -> float:
    return float(np.arctan2(vec[1], vec[0]))


def make_1planar_by_subdivision(g: Graph, schedule: CrossingSchedule,
                                per_gap: int = 2) -> Tuple[Graph, OnePlaneEmbedding, List[ChainStep]]:
    """
    連続する交差の間を細分して、各辺の交差を高々 1 回にする。

    辺 e の最初の区間は e の ID を引き継ぎ、残りの区間は新しい ID。

    Args:
        per_gap: 連続する交差の間に入れる細分頂点の数 (1 以上)

    Returns:
        (抽象グラフ, 1-plane 埋め込み, 元のグラフに戻す縮約の連鎖)

    Raises:
        InvalidScheduleError: schedule が不正
    """
    if per_gap < 1:
        raise PreconditionError(f"per_gap must be at least 1, got {per_gap}")
    check_schedule(g, schedule)
    pos = _circle_positions(schedule.order)
    pairs = schedule.pairs()

    # 端点を共有する交差の数 (その端点に最初/最後の交差を持つ辺の本数)
    touching: Dict[int, int] = {}
    for eid, labels in schedule.crossings.items():
        e = g.edge(eid)
        touching[e.u] = touching.get(e.u, 0) + 1
        touching[e.v] = touching.get(e.v, 0) + 1

    b = EmbeddingBuilder()
    b.vertices = set(g.vertices)
    b.next_vertex = g.next_vertex_id
    b.next_edge = g.next_edge_id
    point: Dict[int, np.ndarray] = {v: pos[v] for v in g.vertices}
    dummy_of_label = {}
    for label in sorted(pairs):
        x = b.next_vertex
        b.next_vertex += 1
        dummy_of_label[label] = x
        e, f = (g.edge(i) for i in pairs[label])
        t, _ = _intersection(pos[e.u], pos[e.v], pos[f.u], pos[f.v])
        point[x] = pos[e.u] + t * (pos[e.v] - pos[e.u])

    chain: List[ChainStep] = []
    crossing_edges: Dict[int, List[int]] = {x: [] for x in dummy_of_label.values()}
    for e in g.edges:
        labels = schedule.crossings.get(e.id, ())
        dummies = [dummy_of_label[lab] for lab in labels]
        stops: List[int] = [e.u]
        if dummies and touching[e.u] > 1:
            stops.append(-1)
        for i, x in enumerate(dummies):
            if i:
                stops.extend([-1] * per_gap)
            stops.append(x)
        if dummies and touching[e.v] > 1:
            stops.append(-1)
        stops.append(e.v)
        # 細分頂点は線分上の中間点に置く
        for i, s in enumerate(stops):
            if s == -1:
                w = b.next_vertex
                b.next_vertex += 1
                b.vertices.add(w)
                stops[i] = w
        for i, s in enumerate(stops):
            if s not in point:
                j = i + 1
                while stops[j] not in point:
                    j += 1
                prev = point[stops[i - 1]]
                point[s] = prev + (point[stops[j]] - prev) / (j - i + 1)

        real = [i for i, s in enumerate(stops) if s not in crossing_edges]
        for k in range(len(real) - 1):
            lo, hi = real[k], real[k + 1]
            eid = e.id if k == 0 else b.next_edge
            if k:
                b.next_edge += 1
                chain.append(("unsubdivide", eid))
            b.edges[eid] = (stops[lo], stops[hi])
            for seg, i in enumerate(range(lo, hi)):
                b.add_pedge(stops[i], stops[i + 1], eid, seg)
            if hi - lo == 2:
                crossing_edges[stops[lo + 1]].append(eid)

    for x, edges in crossing_edges.items():
        b.dummies[x] = tuple(sorted(edges))
    rotation: Dict[int, List[Tuple[float, int]]] = {v: [] for v in b.vertices | set(b.dummies)}
    for p, (u, v) in b.pedges.items():
        rotation[u].append((_direction_angle(point[v] - point[u]), 2 * p))
        rotation[v].append((_direction_angle(point[u] - point[v]), 2 * p + 1))
    # 時計回り (角度の降順)
    b.rotation = {v: [d for _, d in sorted(items, key=lambda t: -t[0])] for v, items in rotation.items()}
    emb = b.freeze().check()
    logger.info(f"make_1planar_by_subdivision: {g.n} -> {emb.graph.n} vertices, "
                f"{len(b.dummies)} crossings, {len(chain)} subdivision edges")
    return emb.graph, emb, chain


# ---------- 次数の削減 ----------

@dataclass(frozen=True)
class SplitRecord:
    vertex: int
    new_vertex: int
    new_edge: int


def degree_reduce(g: Graph) -> Tuple[Graph, List[SplitRecord]]:
    """
    次数 4 以上の頂点を隣接する 2 頂点に分け、最大次数を 3 以下にする。
    元の頂点は辺 ID の小さい 2 辺を残し、残りを新頂点に移す。

    Returns:
        (新グラフ, 分割の記録。記録の new_edge を縮約すると元に戻る)
    """
    cur = g
    records: List[SplitRecord] = []
    pending = [v for v in cur.vertices if cur.degree(v) >= 4]
    while pending:
        v = pending.pop()
        inc = sorted(cur.incident(v))
        cur, w, fresh = vertex_split(cur, v, inc[:2], inc[2:])
        records.append(SplitRecord(v, w, fresh))
        if cur.degree(w) >= 4:
            pending.append(w)
    logger.info(f"degree_reduce: {len(records)} splits, max degree {cur.max_degree()}")
    return cur, records


def split_order(g: Graph, records: Sequence[SplitRecord]) -> List[int]:
    """分割で生まれた頂点を元の頂点の直後に置いた円周の並び。"""
    order = [v for v in g.vertices if v not in {r.new_vertex for r in records}]
    for r in records:
        order.insert(order.index(r.vertex) + 1, r.new_vertex)
    return order


@dataclass
class UnboundedFamilyMember:
    graph: Graph
    embedding: OnePlaneEmbedding
    chain: List[ChainStep]
    schedule: CrossingSchedule
    claimed_lower_bound: Optional[int] = None


def unbounded_family(g: Graph, ell: Optional[int] = None, per_gap: int = 2) -> UnboundedFamilyMember:
    """
    degree_reduce -> circular_layout_schedule -> make_1planar_by_subdivision。

    縮約では basis number が増えないので、元のグラフの下界 ell は出力にそのまま効く。
    ell は利用者の主張として記録するだけで、ここでは証明しない。

    Returns:
        出力グラフ・埋め込み・元のグラフへ戻す縮約の連鎖 (細分の逆 → 分割の逆の順)
    """
    reduced, records = degree_reduce(g)
    schedule = circular_layout_schedule(reduced, split_order(reduced, records))
    out_g, emb, chain = make_1planar_by_subdivision(reduced, schedule, per_gap=per_gap)
    chain = chain + [("contract", r.new_edge) for r in reversed(records)]
    return UnboundedFamilyMember(out_g, emb, chain, schedule, ell)
