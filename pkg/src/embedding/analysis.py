"""
セル・スカート歩道・ポピー判定と埋め込みの分類。

前提:
- スカート歩道はダミー x から出るダートごとに 1 本。ダート x→p を含む面を
  p から x に戻る直前の頂点 q まで辿った歩道 (x 自身は含めない)
- 同じ面が x に 2 度接していれば 2 本の歩道になる (そのとき和集合は単純サイクルにならない)
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from src.cycle_space.edgeset import EdgeSet
from src.embedding.rotation import Face, OnePlaneEmbedding
from src.errors import EmbeddingError, PreconditionError
from src.graph.multigraph import components

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkirtWalk:
    crossing: int
    cell: int
    vertices: Tuple[int, ...]
    pedges: Tuple[int, ...]
    darts: Tuple[int, ...]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def has_dummy(self, emb: OnePlaneEmbedding) -> bool:
        return any(emb.is_dummy(v) for v in self.vertices)

    def abstract_edges(self, emb: OnePlaneEmbedding) -> List[int]:
        return [emb.segments[p][0] for p in self.pedges]

    def __len__(self) -> int:
        return len(self.pedges)


@dataclass(frozen=True)
class EmbeddingProfile:
    crossings: int
    ic: bool
    nic: bool
    full_crossing: bool
    locally_maximal: bool
    poppy: bool
    near_independent_skirts: bool
    connected_skeleton: bool
    optimal: bool

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _require_valid(emb: OnePlaneEmbedding) -> None:
    violations = emb.validate()
    if violations:
        raise EmbeddingError(violations)


def cells(emb: OnePlaneEmbedding) -> List[Face]:
    """平面化の面 (セル)。crossed はダミーに接しているかどうか。"""
    _require_valid(emb)
    return list(emb.faces)


def skirt_walks(emb: OnePlaneEmbedding, x: int) -> List[SkirtWalk]:
    """
    交差 x の 4 本のスカート歩道 (x の回転順)。

    Raises:
        PreconditionError: x がダミーでない
    """
    if not emb.is_dummy(x):
        raise PreconditionError(f"vertex {x} is not a dummy")
    out = []
    for d0 in emb.rotation[x]:
        verts = [emb.head(d0)]
        pedges = []
        darts = []
        d = emb.next_dart(d0)
        while emb.head(d) != x:
            darts.append(d)
            pedges.append(d >> 1)
            verts.append(emb.head(d))
            d = emb.next_dart(d)
        out.append(SkirtWalk(x, emb.face_of(d0).id, tuple(verts), tuple(pedges), tuple(darts)))
    return out


def crossing_surrounding_cycle(emb: OnePlaneEmbedding, x: int) -> Optional[EdgeSet]:
    """
    4 本のスカート歩道の和がダミーを含まない単純サイクルならその辺集合、そうでなければ None。
    """
    walks = skirt_walks(emb, x)
    if len(walks) != 4 or any(w.has_dummy(emb) for w in walks):
        return None
    edge_ids: List[int] = []
    for w in walks:
        edge_ids.extend(w.abstract_edges(emb))
    if len(set(edge_ids)) != len(edge_ids):
        return None
    g = emb.graph
    degree: Dict[int, int] = {}
    for eid in edge_ids:
        e = g.edge(eid)
        if e.is_loop:
            return None
        degree[e.u] = degree.get(e.u, 0) + 1
        degree[e.v] = degree.get(e.v, 0) + 1
    if any(d != 2 for d in degree.values()):
        return None
    sub = g.with_edges([g.edge(eid) for eid in edge_ids], vertices=degree.keys())
    if len(components(sub)) != 1:
        return None
    return EdgeSet.of(edge_ids)


def crossing_endpoints(emb: OnePlaneEmbedding, x: int) -> Tuple[int, int, int, int]:
    """(e の端点 a, c, f の端点 b, d)。"""
    e, f = emb.dummies[x]
    ee, ff = emb.graph.edge(e), emb.graph.edge(f)
    return ee.u, ee.v, ff.u, ff.v


def is_full_crossing(emb: OnePlaneEmbedding, x: int) -> bool:
    walks = skirt_walks(emb, x)
    return crossing_surrounding_cycle(emb, x) is not None and all(len(w) == 1 for w in walks)


def is_locally_maximal_at(emb: OnePlaneEmbedding, x: int) -> bool:
    g = emb.graph
    ends = crossing_endpoints(emb, x)
    adjacent = {(min(e.u, e.v), max(e.u, e.v)) for e in g.edges}
    return all((min(p, q), max(p, q)) in adjacent for p, q in combinations(ends, 2))


def near_independent(emb: OnePlaneEmbedding) -> bool:
    """異なる交差のスカート歩道どうしが 2 頂点以上を共有しないか。"""
    walks = {x: [set(w.vertices) for w in skirt_walks(emb, x)] for x in emb.dummies}
    for x, y in combinations(sorted(walks), 2):
        for a in walks[x]:
            for b in walks[y]:
                if len(a & b) >= 2:
                    return False
    return True


def _is_optimal(emb: OnePlaneEmbedding) -> bool:
    g = emb.graph
    if not g.is_simple() or g.n < 3 or g.m != 4 * g.n - 8:
        return False
    for f in emb.faces:
        if len(f) != 3:
            return False
        if sum(1 for v in f.vertices if emb.is_dummy(v)) != 1:
            return False
    return True


def classify(emb: OnePlaneEmbedding) -> EmbeddingProfile:
    """
    定義どおりに全フラグを計算する。交差が無ければ交差に関するフラグはすべて真。

    Raises:
        EmbeddingError: 埋め込みが不正
    """
    _require_valid(emb)
    xs = list(emb.dummies)
    ends = {x: set(crossing_endpoints(emb, x)) for x in xs}
    ic = all(not (ends[x] & ends[y]) for x, y in combinations(xs, 2))
    nic = all(len(ends[x] & ends[y]) <= 1 for x, y in combinations(xs, 2))
    poppy = all(crossing_surrounding_cycle(emb, x) is not None for x in xs)
    full = all(is_full_crossing(emb, x) for x in xs)
    locmax = all(is_locally_maximal_at(emb, x) for x in xs)
    profile = EmbeddingProfile(
        crossings=len(xs),
        ic=ic,
        nic=nic,
        full_crossing=full,
        locally_maximal=locmax,
        poppy=poppy,
        near_independent_skirts=near_independent(emb),
        connected_skeleton=len(components(emb.skeleton())) == 1,
        optimal=_is_optimal(emb),
    )
    logger.debug(f"classify: {profile}")
    return profile
