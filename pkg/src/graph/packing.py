"""
辺素な全域木のパッキング。

設計:
- 既定はマトロイド分割 (Edmonds) の増加路法。BFS で最短の置換列を探すので判定は厳密
- 小さなグラフ向けに総当たり版を残し、テストで相互検証する (config/search_defaults.json の上限内のみ)
- Nash-Williams/Tutte の分割条件は頂点数 8 以下で全分割を列挙して確かめる
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from src.data_loader import search_defaults
from src.errors import CutoffExceeded, DisconnectedGraphError, PreconditionError
from src.graph.multigraph import Graph, components

logger = logging.getLogger(__name__)


def _forest_path(g: Graph, forest: Set[int], u: int, v: int) -> Optional[List[int]]:
    """forest (辺 ID 集合) の中の u-v パス。非連結なら None。"""
    if u == v:
        return []
    prev: Dict[int, Tuple[int, int]] = {u: (-1, -1)}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for eid in g.incident(x):
            if eid not in forest:
                continue
            y = g.edge(eid).other(x)
            if y in prev:
                continue
            prev[y] = (x, eid)
            if y == v:
                path = []
                while y != u:
                    y, e = prev[y]
                    path.append(e)
                return path
            queue.append(y)
    return None


def _augment(g: Graph, k: int, owner: Dict[int, int], forests: List[Set[int]], start: int) -> bool:
    """未割当の辺 start を入れる置換列を探し、見つかれば forests を更新する。"""
    label: Dict[int, Optional[Tuple[int, int]]] = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        ex = g.edge(x)
        for i in range(k):
            if owner.get(x) == i:
                continue
            path = _forest_path(g, forests[i], ex.u, ex.v)
            if path is None:
                # x を森 i に入れ、ラベルを遡って玉突きで移動させる
                cur, target = x, i
                while True:
                    old = owner.get(cur)
                    if old is not None:
                        forests[old].discard(cur)
                    forests[target].add(cur)
                    owner[cur] = target
                    back = label[cur]
                    if back is None:
                        return True
                    cur, target = back
            for y in path:
                if y not in label:
                    label[y] = (x, i)
                    queue.append(y)
    return False


def tree_packing(g: Graph, k: int, method: str = "matroid") -> Optional[List[FrozenSet[int]]]:
    """
    k 本の辺素な全域木を探す。

    Args:
        g: 連結グラフ
        k: 木の本数 (正整数)
        method: "matroid" (増加路法) または "exhaustive" (総当たり、サイズ上限あり)

    Returns:
        各木の辺 ID 集合のリスト。存在しなければ None (厳密判定)。

    Raises:
        DisconnectedGraphError: g が非連結
        CutoffExceeded: exhaustive で上限を超えた
    """
    if k <= 0:
        raise PreconditionError(f"k must be positive, got {k}")
    if len(components(g)) > 1:
        raise DisconnectedGraphError(f"tree packing needs a connected graph ({len(components(g))} components)")
    need = g.n - 1
    if need == 0:
        return [frozenset() for _ in range(k)]
    if g.m < k * need:
        return None
    if method == "exhaustive":
        return _exhaustive_packing(g, k)

    owner: Dict[int, int] = {}
    forests: List[Set[int]] = [set() for _ in range(k)]
    for e in g.edges:
        if e.is_loop:
            continue
        _augment(g, k, owner, forests, e.id)
        if all(len(f) == need for f in forests):
            break
    if all(len(f) == need for f in forests):
        return [frozenset(f) for f in forests]
    logger.debug(f"tree packing: forest sizes {[len(f) for f in forests]}, need {need}")
    return None


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def copy(self) -> "_UnionFind":
        uf = _UnionFind(())
        uf.parent = dict(self.parent)
        return uf


def _exhaustive_packing(g: Graph, k: int) -> Optional[List[FrozenSet[int]]]:
    limits = search_defaults()["packing"]
    if g.n > limits["exhaustive_max_vertices"] or g.m > limits["exhaustive_max_edges"]:
        raise CutoffExceeded(
            f"exhaustive packing limited to n <= {limits['exhaustive_max_vertices']}, "
            f"m <= {limits['exhaustive_max_edges']} (got n={g.n}, m={g.m})"
        )
    edges = [e for e in g.edges if not e.is_loop]
    need = g.n - 1

    def rec(idx: int, ufs: List[_UnionFind], trees: List[List[int]]) -> Optional[List[List[int]]]:
        missing = sum(need - len(t) for t in trees)
        if missing == 0:
            return trees
        if len(edges) - idx < missing:
            return None
        e = edges[idx]
        for i in range(k):
            if len(trees[i]) == need:
                continue
            a, b = ufs[i].find(e.u), ufs[i].find(e.v)
            if a == b:
                continue
            uf = ufs[i].copy()
            uf.parent[a] = b
            got = rec(idx + 1, ufs[:i] + [uf] + ufs[i + 1:], trees[:i] + [trees[i] + [e.id]] + trees[i + 1:])
            if got is not None:
                return got
            # 空の森は互いに区別がないので、最初の空き森だけ試せばよい
            if not trees[i]:
                break
        return rec(idx + 1, ufs, trees)

    found = rec(0, [_UnionFind(g.vertices) for _ in range(k)], [[] for _ in range(k)])
    return None if found is None else [frozenset(t) for t in found]


def _set_partitions(items: List[int]) -> Iterator[List[List[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def nash_williams_tutte_condition(g: Graph, k: int) -> bool:
    """
    すべての頂点分割 P について「P の異なる部分を結ぶ辺数 >= k(|P| - 1)」が成り立つか。
    k 本の辺素な全域木が存在するための必要十分条件。

    Raises:
        CutoffExceeded: 頂点数が上限 (既定 8) を超える
    """
    cap = search_defaults()["packing"]["nash_williams_max_vertices"]
    if g.n > cap:
        raise CutoffExceeded(f"partition enumeration limited to {cap} vertices (got {g.n})")
    for part in _set_partitions(list(g.vertices)):
        if len(part) < 2:
            continue
        block_of = {v: i for i, blk in enumerate(part) for v in blk}
        crossing = sum(1 for e in g.edges if block_of[e.u] != block_of[e.v])
        if crossing < k * (len(part) - 1):
            return False
    return True
