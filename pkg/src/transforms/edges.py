"""
基底を運ぶ辺の操作: 縮約、辺の追加、重複、細分、端子付きグラフによる置換。

どの操作も (新しいグラフ, 運んだ基底) を返し、出口で charge の上界を監査する。
生き残る辺の ID は変えない。新しい辺・頂点はカウンタから採番する。
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import extract_basis
from src.cycle_space.report import BasisReport, ensure_kbasis, verify_kbasis
from src.errors import DisconnectedGraphError, InvalidBasisError, PathCountMismatch, PreconditionError
from src.graph.multigraph import Edge, Graph, add_edge, contract, is_connected, subdivide
from src.transforms.terminal import AugmentedBasis, TerminalGraph, check_augmented, parallel_pair_augmented

logger = logging.getLogger(__name__)

Basis = List[EdgeSet]


def _require_basis(g: Graph, b: Sequence[EdgeSet], what: str) -> BasisReport:
    report = verify_kbasis(g, b, 0)
    if not (report.eulerian and report.independent and report.generates):
        raise InvalidBasisError(f"{what}: input is not a basis of the graph", report)
    return report


def contract_basis(g: Graph, b: Sequence[EdgeSet], eid: int) -> Tuple[Graph, Basis]:
    """
    辺 eid を縮約し、各要素から eid を除く。最大 charge は増えない。
    ループの縮約 (= 削除) では空になった要素と従属した要素を落とす。

    Raises:
        InvalidBasisError: b が g の基底でない
    """
    before = _require_basis(g, b, "contract_basis")
    if not g.has_edge(eid):
        raise PreconditionError(f"unknown edge {eid}")
    out_g, _ = contract(g, eid)
    moved = [s.without(eid) for s in b]
    if g.edge(eid).is_loop:
        moved = extract_basis(out_g, [s for s in moved if s])
    ensure_kbasis(out_g, moved, before.max_charge, "contract_basis")
    return out_g, moved


def _shortest_path(g: Graph, u: int, v: int) -> Optional[List[int]]:
    """BFS の最短パスの辺 ID。隣接は (隣接頂点, 辺 ID) の昇順に調べる。"""
    if u == v:
        return []
    parent: Dict[int, Tuple[int, int]] = {u: (u, -1)}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        nbrs = sorted((g.edge(eid).other(x), eid) for eid in g.incident(x) if not g.edge(eid).is_loop)
        for y, eid in nbrs:
            if y in parent:
                continue
            parent[y] = (x, eid)
            if y == v:
                path = []
                while y != u:
                    y, e = parent[y]
                    path.append(e)
                return path[::-1]
            queue.append(y)
    return None


def add_edge_basis(g: Graph, b: Sequence[EdgeSet], u: int, v: int) -> Tuple[Graph, Basis]:
    """
    新しい辺 uv を加え、uv と g での最短 u-v パスからなるサイクルを基底に足す。
    最大 charge の増加は 1 以下。

    Raises:
        DisconnectedGraphError: g が非連結
    """
    if not is_connected(g):
        raise DisconnectedGraphError("add_edge_basis needs a connected graph")
    before = _require_basis(g, b, "add_edge_basis")
    path = _shortest_path(g, u, v)
    out_g, eid = add_edge(g, u, v)
    out = list(b) + [EdgeSet.of(path + [eid])]
    ensure_kbasis(out_g, out, before.max_charge + 1, "add_edge_basis")
    return out_g, out


def subdivide_basis(g: Graph, b: Sequence[EdgeSet], eid: int) -> Tuple[Graph, Basis]:
    """
    辺 eid を 2 辺のパスに置き換え、eid を含む要素には新辺も入れる。
    生き残る辺の charge はそのまま、新辺の charge は eid と同じ。
    """
    before = _require_basis(g, b, "subdivide_basis")
    out_g, _, fresh = subdivide(g, eid)
    extra = EdgeSet.of([fresh])
    out = [s ^ extra if eid in s else s for s in b]
    ensure_kbasis(out_g, out, before.max_charge, "subdivide_basis")
    return out_g, out


def replace_edge_basis(
    g: Graph,
    b: Sequence[EdgeSet],
    eid: int,
    h: TerminalGraph,
    ab: AugmentedBasis,
    reuse_edge_id: bool = False,
) -> Tuple[Graph, Basis]:
    """
    辺 eid = (u, v) を端子付きグラフ h で置き換える (s を u に、t を v に重ねる)。

    新しい基底は、eid を含まない要素 + h の基底 + eid を含む要素 B_i を B_i - eid + P_i に
    したもの (B_i と P_i は添字順に対応させる)。最大 charge は max(元の最大, ab.k) 以下。

    Args:
        reuse_edge_id: True なら h の最初の辺に eid を引き継がせる
    Raises:
        PathCountMismatch: パスの本数が eid の charge と違う
        PreconditionError: eid がループ
    """
    before = _require_basis(g, b, "replace_edge_basis")
    check_augmented(h, ab)
    e = g.edge(eid)
    if e.is_loop:
        raise PreconditionError(f"edge {eid} is a loop and has no two ends to attach terminals to")
    using = [i for i, s in enumerate(b) if eid in s]
    if len(ab.paths) != len(using):
        raise PathCountMismatch(f"edge {eid} has charge {len(using)} but {len(ab.paths)} paths were given")

    vmap: Dict[int, int] = {h.s: e.u, h.t: e.v}
    next_v = g.next_vertex_id
    for x in h.graph.vertices:
        if x not in vmap:
            vmap[x] = next_v
            next_v += 1
    emap: Dict[int, int] = {}
    next_e = g.next_edge_id
    for he in h.graph.edges:
        if reuse_edge_id and not emap:
            emap[he.id] = eid
            continue
        emap[he.id] = next_e
        next_e += 1
    edges = [x for x in g.edges if x.id != eid]
    edges += [Edge(emap[he.id], vmap[he.u], vmap[he.v]) for he in h.graph.edges]
    vertices = list(g.vertices) + [vmap[x] for x in h.graph.vertices if x not in (h.s, h.t)]
    out_g = Graph(vertices, edges, next_edge_id=next_e, next_vertex_id=next_v)

    def lift(s: EdgeSet) -> EdgeSet:
        return EdgeSet.of(emap[x] for x in s)

    out: Basis = []
    paths = iter(ab.paths)
    for i, s in enumerate(b):
        out.append(s.without(eid) ^ lift(next(paths)) if i in using else s)
    out.extend(lift(s) for s in ab.basis)
    ensure_kbasis(out_g, out, max(before.max_charge, ab.k), "replace_edge_basis")
    return out_g, out


def duplicate_edge_basis(g: Graph, b: Sequence[EdgeSet], eid: int) -> Tuple[Graph, Basis]:
    """
    eid の平行な複製を加える (eid は ID を保つ)。二重辺での置換として運ぶので、
    最大 charge は max(元の最大, 2) 以下。
    """
    before = _require_basis(g, b, "duplicate_edge_basis")
    ell = sum(1 for s in b if eid in s)
    out_g, out = replace_edge_basis(g, b, eid, TerminalGraph.parallel_pair(), parallel_pair_augmented(ell),
                                    reuse_edge_id=True)
    ensure_kbasis(out_g, out, max(before.max_charge, 2), "duplicate_edge_basis")
    return out_g, out
