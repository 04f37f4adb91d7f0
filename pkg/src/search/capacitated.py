"""
容量付きの基底探索 (分枝限定法)。

辺ごとの容量 (charge の上限) の下で、候補のサイクル空間要素から betti 個の独立な要素を選ぶ。
候補は (要素の辺数, ビット列) の昇順に並べ、添字の昇順に選ぶ。見つかる解は添字列の辞書順で最小。

枝刈り:
- 容量を使い切った辺を含む候補は選ばない
- 残りの必要数 × 次の候補の辺数 > 残り容量の合計 なら打ち切る
- 容量を満たす残りの候補で階数が betti に届かないなら打ち切る
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

import numpy as np

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import GF2Eliminator
from src.graph.multigraph import Graph, betti
from src.search.budget import Clock

logger = logging.getLogger(__name__)


def order_candidates(elements: Sequence[EdgeSet]) -> List[EdgeSet]:
    """空集合を除き、(辺数, ビット列) の昇順に並べる。"""
    return sorted((s for s in elements if s), key=lambda s: (len(s), s.bits))


class CapacitatedSearch:
    """
    Args:
        g: 対象のグラフ
        candidates: order_candidates 済みの候補
        capacity: 辺 ID を添字にした容量 (負は 0 とみなす)
        clock: 予算の見張り
    """

    def __init__(self, g: Graph, candidates: Sequence[EdgeSet], capacity: np.ndarray, clock: Clock):
        self.dim = betti(g)
        self.candidates = list(candidates)
        self.bits = [s.bits for s in self.candidates]
        self.edges = [np.array(s.ids(), dtype=np.int64) for s in self.candidates]
        self.sizes = [len(s) for s in self.candidates]
        size = max(g.edge_ids) + 1 if g.m else 0
        self.slack = np.zeros(size, dtype=np.int64)
        if size:
            self.slack[: len(capacity)] = np.clip(capacity[:size], 0, None)
            mask = np.zeros(size, dtype=bool)
            mask[g.edge_ids] = True
            self.slack[~mask] = 0
        self.total = int(self.slack.sum())
        self.clock = clock
        self.elim = GF2Eliminator()
        self.chosen: List[int] = []
        self.suffix_rank = self._suffix_ranks()

    def _suffix_ranks(self) -> List[int]:
        out = [0] * (len(self.bits) + 1)
        elim = GF2Eliminator()
        for i in range(len(self.bits) - 1, -1, -1):
            elim.push(self.bits[i])
            out[i] = len(elim)
        return out

    def _fits(self, i: int) -> bool:
        return bool((self.slack[self.edges[i]] > 0).all())

    def _can_finish(self, start: int) -> bool:
        """容量を満たす残りの候補で階数が dim に届くか。"""
        elim = self.elim.copy()
        if len(elim) >= self.dim:
            return True
        for j in range(start, len(self.bits)):
            if self._fits(j) and elim.push(self.bits[j]) is not None and len(elim) >= self.dim:
                return True
        return False

    def _take(self, i: int) -> Optional[int]:
        pivot = self.elim.push(self.bits[i])
        if pivot is None:
            return None
        self.slack[self.edges[i]] -= 1
        self.total -= self.sizes[i]
        self.chosen.append(i)
        return pivot

    def _undo(self, i: int, pivot: int) -> None:
        self.chosen.pop()
        self.total += self.sizes[i]
        self.slack[self.edges[i]] += 1
        self.elim.pop(pivot)

    def _dfs(self, start: int) -> bool:
        if len(self.chosen) == self.dim:
            return True
        self.clock.tick()
        if not self._can_finish(start):
            return False
        for i in range(start, len(self.bits)):
            remaining = self.dim - len(self.chosen)
            if remaining * self.sizes[i] > self.total:
                break
            if len(self.chosen) + self.suffix_rank[i] < self.dim:
                break
            if not self._fits(i):
                continue
            pivot = self._take(i)
            if pivot is None:
                continue
            if self._dfs(i + 1):
                return True
            self._undo(i, pivot)
        return False

    def run(self, first: Optional[int] = None) -> Optional[List[int]]:
        """
        解の候補添字 (昇順) を返す。無ければ None。

        Args:
            first: 指定すると、最小添字がこの値である解だけを探す (並列探索の部分木)

        Raises:
            BudgetExceeded: 予算切れ
        """
        if self.dim == 0:
            return [] if first is None else None
        if first is None:
            return list(self.chosen) if self._dfs(0) else None
        if first >= len(self.bits) or not self._fits(first):
            return None
        pivot = self._take(first)
        if pivot is None:
            return None
        if self._dfs(first + 1):
            return list(self.chosen)
        self._undo(first, pivot)
        return None


def uniform_capacity(g: Graph, k: int) -> np.ndarray:
    size = max(g.edge_ids) + 1 if g.m else 0
    return np.full(size, k, dtype=np.int64)


def find_capacitated_basis(g: Graph, candidates: Sequence[EdgeSet], capacity: np.ndarray,
                           clock: Clock) -> Optional[List[EdgeSet]]:
    """容量の下で基底を探す。candidates は order_candidates 済みであること。"""
    search = CapacitatedSearch(g, candidates, capacity, clock)
    found = search.run()
    logger.debug(f"capacitated search: {'found' if found is not None else 'exhausted'} after {clock.nodes} nodes")
    return None if found is None else [search.candidates[i] for i in found]
