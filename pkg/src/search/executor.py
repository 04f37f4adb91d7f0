"""
分枝限定法の部分木 (最初に選ぶ候補の添字ごと) をプロセス並列で探索する。

結果は「解を持つ最小の添字」の部分木の解を採る。逐次探索と同じ証拠が返る。
"""

from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from tqdm import tqdm

from src.cycle_space.edgeset import EdgeSet
from src.errors import BudgetExceeded
from src.graph.multigraph import Graph
from src.search.budget import Clock
from src.search.capacitated import CapacitatedSearch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubtreeTask:
    graph: Graph
    bits: List[int]
    capacity: List[int]
    first: int
    max_nodes: int
    seconds: float


@dataclass(frozen=True)
class SubtreeResult:
    first: int
    chosen: Optional[List[int]]
    nodes: int
    exceeded: bool = False


def _search_subtree(task: SubtreeTask) -> SubtreeResult:
    """
    ワーカープロセス内で実行される。トップレベルに置くのは pickle のため。
    予算切れは例外ではなく exceeded=True で返す。
    """
    clock = Clock(task.max_nodes, task.seconds)
    candidates = [EdgeSet(b) for b in task.bits]
    search = CapacitatedSearch(task.graph, candidates, np.array(task.capacity, dtype=np.int64), clock)
    try:
        chosen = search.run(first=task.first)
    except BudgetExceeded:
        return SubtreeResult(task.first, None, clock.nodes, exceeded=True)
    return SubtreeResult(task.first, chosen, clock.nodes)


class SubtreeExecutor:
    """
    ProcessPoolExecutor で部分木を並列に回すエグゼキュータ。
    """

    def __init__(self, max_workers: Optional[int] = None, progress: bool = True):
        """
        Args:
            max_workers: ワーカープロセス数。None なら CPU コア数
            progress: tqdm の進捗バーを出すか
        """
        self.max_workers = max_workers
        self.progress = progress

    def search(self, g: Graph, candidates: List[EdgeSet], capacity: np.ndarray, max_nodes: int,
               seconds: float) -> Optional[List[int]]:
        """
        Returns:
            解の添字列 (逐次探索と同じもの)。全部木で解が無ければ None
        Raises:
            BudgetExceeded: 解が決まる前に予算切れの部分木がある
        """
        bits = [s.bits for s in candidates]
        cap = [int(x) for x in capacity]
        tasks = [SubtreeTask(g, bits, cap, i, max_nodes, seconds) for i in range(len(bits))]
        if not tasks:
            return None

        logger.info(f"Starting parallel subtree search: {len(tasks)} subtrees, {self.max_workers or 'default'} workers.")
        results: Dict[int, SubtreeResult] = {}
        with concurrent.futures.ProcessPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_first = {executor.submit(_search_subtree, t): t.first for t in tasks}
            with tqdm(total=len(tasks), desc="Searching subtrees", disable=not self.progress) as pbar:
                for future in concurrent.futures.as_completed(future_to_first):
                    if future.cancelled():
                        continue
                    res = future.result()
                    results[res.first] = res
                    pbar.update(1)
                    pbar.set_postfix({"found": sum(1 for r in results.values() if r.chosen is not None)})
                    if self._decided(results) is not None:
                        for f in future_to_first:
                            f.cancel()
                        break

        decided = self._decided(results)
        if decided is not None:
            logger.info(f"Parallel search found a witness in subtree {decided}.")
            return results[decided].chosen
        exceeded = sorted(i for i, r in results.items() if r.exceeded)
        if exceeded:
            raise BudgetExceeded(f"budget exceeded in subtrees {exceeded[:5]}")
        if len(results) < len(tasks):
            raise BudgetExceeded("parallel search ended before all subtrees finished")
        logger.info(f"Parallel search exhausted all {len(tasks)} subtrees.")
        return None

    @staticmethod
    def _decided(results: Dict[int, SubtreeResult]) -> Optional[int]:
        """解を持つ最小の部分木。それより前の部分木が全部「解なし」で終わっていれば確定。"""
        i = 0
        while i in results:
            r = results[i]
            if r.exceeded:
                return None
            if r.chosen is not None:
                return i
            i += 1
        return None
