"""
ブローアップ: g の全辺を端子付きグラフ h のコピーで置き換え、基底を運ぶ。
"""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.report import ensure_kbasis, verify_kbasis
from src.graph.multigraph import Graph
from src.search.budget import SearchBudget
from src.transforms.augmented import augmented_basis_number
from src.transforms.edges import replace_edge_basis
from src.transforms.terminal import AugmentedBasis, TerminalGraph

logger = logging.getLogger(__name__)


def blowup(g: Graph, b: Sequence[EdgeSet], h: TerminalGraph, mode: str = "exact",
           budget: Optional[SearchBudget] = None) -> Tuple[Graph, List[EdgeSet], int]:
    """
    辺 ID の昇順に 1 本ずつ replace_edge_basis する。各辺の ℓ はその辺の charge で、
    ℓ ごとの拡張基底は augmented_basis_number(h, ℓ, mode) を 1 回だけ求めて使い回す。

    Returns:
        (ブローアップ, 運んだ基底, 保証される上界 max(元の最大 charge, 使った k の最大))
    """
    before = verify_kbasis(g, b, 0)
    cache: Dict[int, AugmentedBasis] = {}
    bound = before.max_charge
    cur_g, cur_b = g, list(b)
    for eid in g.edge_ids:
        ell = before.charge_of(eid)
        if ell not in cache:
            cache[ell] = augmented_basis_number(h, ell, mode=mode, budget=budget)
        ab = cache[ell]
        bound = max(bound, ab.k)
        cur_g, cur_b = replace_edge_basis(cur_g, cur_b, eid, h, ab)
    ensure_kbasis(cur_g, cur_b, bound, "blowup")
    logger.info(f"blowup: {g.m} edges replaced, n={cur_g.n}, m={cur_g.m}, bound {bound}")
    return cur_g, cur_b, bound
