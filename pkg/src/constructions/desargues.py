"""
デザルググラフ (一般化ピーターセングラフ GP(10, 3)) と、その明示的な 3-基底。

辺 ID: 外周 a-(a+1) が a、スポーク a-(10+a) が 10+a、内周 (10+a)-(10+(a+3)%10) が 20+a。
"""

from __future__ import annotations

from typing import List, Tuple

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.report import ensure_kbasis
from src.graph.multigraph import Graph

N = 10
STEP = 3


def desargues_graph() -> Graph:
    pairs = [(a, (a + 1) % N) for a in range(N)]
    pairs += [(a, N + a) for a in range(N)]
    pairs += [(N + a, N + (a + STEP) % N) for a in range(N)]
    return Graph.from_edge_list(pairs, 2 * N)


def outer_cycle() -> EdgeSet:
    return EdgeSet.of(range(N))


def inner_cycle() -> EdgeSet:
    return EdgeSet.of(2 * N + a for a in range(N))


def spoke_cycle(a: int) -> EdgeSet:
    """内周の辺 20+a と両端のスポーク、外周の a..a+3 の 3 辺からなる 6-サイクル。"""
    b = (a + STEP) % N
    outer = [(a + i) % N for i in range(STEP)]
    return EdgeSet.of([2 * N + a, N + a, N + b] + outer)


def desargues_3basis() -> Tuple[Graph, List[EdgeSet]]:
    """
    内周の 10-サイクルと、内周の辺ごとの 6-サイクル 10 個。外周の辺は 3 個、
    スポークと内周の辺は 2 個の要素に含まれる。

    Returns:
        (グラフ, [6-サイクル (内周の辺 ID 順)..., 内周])
    """
    g = desargues_graph()
    basis = [spoke_cycle(a) for a in range(N)] + [inner_cycle()]
    ensure_kbasis(g, basis, 3, "desargues_3basis")
    return g, basis
