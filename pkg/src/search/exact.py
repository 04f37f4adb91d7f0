"""
basis number の厳密計算。

設計:
- k = 数え上げの下界から 1 ずつ上げて容量 k の基底を探す。最初に見つかった k が値
- 値 k が出たら k-1 でもう一度探索し、解が無いことを確かめてから証明書を返す
- 並列時は最初の候補ごとの部分木に分け、解を持つ最小の部分木の解を採る (逐次と同じ証拠)
"""

from __future__ import annotations

import logging
import time
from typing import List, Optional

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import enumerate_cycle_space, fundamental_cycles, rank
from src.cycle_space.report import charges, ensure_kbasis
from src.data_loader import search_defaults
from src.errors import BudgetExceeded, CutoffExceeded, InvalidBasisError
from src.graph.multigraph import Graph, betti, blocks
from src.search.bounds import counting_lower_bound, is_cubic
from src.search.budget import Clock, SearchBudget
from src.search.capacitated import CapacitatedSearch, order_candidates, uniform_capacity
from src.search.certificate import BasisNumberCertificate
from src.search.executor import SubtreeExecutor

logger = logging.getLogger(__name__)


def _fundamental_upper(g: Graph) -> int:
    ch = charges(g, fundamental_cycles(g))
    return int(ch.max()) if len(ch) else 0


def _search_k(g: Graph, candidates: List[EdgeSet], k: int, budget: SearchBudget, clock: Clock,
              progress: bool) -> Optional[List[EdgeSet]]:
    capacity = uniform_capacity(g, k)
    if budget.workers and budget.workers > 1:
        seconds = clock.seconds_left()
        if seconds <= 0:
            raise BudgetExceeded("time limit reached before the parallel search started")
        executor = SubtreeExecutor(max_workers=budget.workers, progress=progress)
        chosen = executor.search(g, candidates, capacity, budget.max_nodes, seconds)
    else:
        chosen = CapacitatedSearch(g, candidates, capacity, clock).run()
    return None if chosen is None else [candidates[i] for i in chosen]


def _check_cubic_vertices(g: Graph, witness: List[EdgeSet], k: int) -> None:
    """3 正則なら、各頂点を通る要素は floor(3k/2) 個以下 (girth 上界の前提)。"""
    if not is_cubic(g):
        return
    limit = 3 * k // 2
    for v in g.vertices:
        inc = set(g.incident(v))
        through = sum(1 for s in witness if inc.intersection(s.ids()))
        if through > limit:
            raise InvalidBasisError(f"vertex {v} lies on {through} witness elements, more than {limit}")


def exact_basis_number(g: Graph, budget: Optional[SearchBudget] = None,
                       progress: bool = False) -> BasisNumberCertificate:
    """
    Args:
        g: 対象のグラフ
        budget: None なら SearchBudget.from_env()
        progress: 並列探索で tqdm を出すか

    Returns:
        値・証拠・下界の理由を持つ証明書 (exhaustive=True)

    Raises:
        CapExceeded: サイクル空間が budget.cap を超える
        BudgetExceeded: 予算切れ (それまでの下界/上界を保持)
    """
    budget = budget or SearchBudget.from_env()
    started = time.monotonic()
    dim = betti(g)
    if dim == 0:
        return BasisNumberCertificate(0, [], "counting", True)

    candidates = order_candidates(enumerate_cycle_space(g, budget.cap))
    lower = counting_lower_bound(g)
    clock = Clock(budget.max_nodes, budget.seconds)
    upper = _fundamental_upper(g)
    logger.info(f"exact search: betti {dim}, {len(candidates)} candidates, counting bound {lower}, "
                f"fundamental cycles give {upper}")

    k = lower
    witness = None
    while witness is None:
        try:
            witness = _search_k(g, candidates, k, budget, clock, progress)
        except BudgetExceeded as e:
            raise BudgetExceeded(f"exact search stopped at k={k}: {e}", lower=k, upper=upper) from e
        if witness is None:
            logger.debug(f"no {k}-basis exists ({clock.nodes} nodes so far)")
            k += 1

    try:
        refuted = _search_k(g, candidates, k - 1, budget, clock, progress) if k > 0 else None
    except BudgetExceeded as e:
        raise BudgetExceeded(f"confirmation search at k={k - 1} stopped: {e}", lower=k - 1, upper=k,
                             witness=witness) from e
    if refuted is not None:
        raise InvalidBasisError(f"confirmation search found a {k - 1}-basis after the {k - 1} search failed")

    ensure_kbasis(g, witness, k, "exact_basis_number")
    _check_cubic_vertices(g, witness, k)
    elapsed = time.monotonic() - started
    reason = "counting" if k == lower else "exhaustion"
    logger.info(f"basis number {k} ({reason}), {clock.nodes} nodes, {elapsed:.2f}s")
    return BasisNumberCertificate(k, witness, reason, True, counting_bound=lower, nodes=clock.nodes,
                                  elapsed=elapsed)


def basis_number_by_blocks(g: Graph, budget: Optional[SearchBudget] = None) -> BasisNumberCertificate:
    """
    ブロックごとに exact_basis_number を解いて最大を取る。サイクル空間はブロックの直和なので
    証拠はブロックの証拠の和集合。
    """
    budget = budget or SearchBudget.from_env()
    witness: List[EdgeSet] = []
    value = 0
    reason = "counting"
    nodes = 0
    for block in blocks(g):
        sub = g.edge_subgraph(block)
        if betti(sub) == 0:
            continue
        cert = exact_basis_number(sub, budget)
        witness.extend(cert.witness)
        nodes += cert.nodes
        if cert.value > value:
            value, reason = cert.value, cert.lower_bound_reason
    ensure_kbasis(g, witness, value, "basis_number_by_blocks")
    lower = counting_lower_bound(g) if betti(g) else 0
    return BasisNumberCertificate(value, witness, reason, True, counting_bound=lower, nodes=nodes)


def naive_basis_number(g: Graph) -> int:
    """
    素朴な参照実装: betti 個の要素の組を charge だけで枝刈りして全部試し、葉で階数を見る。
    テストで分枝限定法と突き合わせるためのもの。

    Raises:
        CutoffExceeded: betti が search.naive_max_betti を超える
    """
    dim = betti(g)
    limit = search_defaults()["search"]["naive_max_betti"]
    if dim > limit:
        raise CutoffExceeded(f"naive search is limited to betti <= {limit}, got {dim}")
    if dim == 0:
        return 0
    elements = [s for s in enumerate_cycle_space(g, 1 << dim) if s]
    edge_lists = [s.ids() for s in elements]

    def exists(k: int) -> bool:
        load = {eid: 0 for eid in g.edge_ids}
        picked: List[EdgeSet] = []

        def rec(start: int) -> bool:
            if len(picked) == dim:
                return rank(picked) == dim
            for i in range(start, len(elements) - (dim - len(picked)) + 1):
                ids = edge_lists[i]
                if any(load[e] >= k for e in ids):
                    continue
                for e in ids:
                    load[e] += 1
                picked.append(elements[i])
                if rec(i + 1):
                    return True
                picked.pop()
                for e in ids:
                    load[e] -= 1
            return False

        return rec(0)

    k = 1
    while not exists(k):
        k += 1
    return k
