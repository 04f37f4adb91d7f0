"""
basis number の下界。

- 数え上げの下界: 基底の各要素は girth 本以上の辺を持つので、charge の総和 >= girth * betti
- 3 正則グラフの girth の上界: k-基底があるなら各頂点を通る要素は floor(3k/2) 個以下
- 縮約の連鎖: 縮約で basis number は増えず、細分では変わらないので、縮約先の下界がそのまま効く
- 平面性: 平面グラフだけが 2-基底を持つので、非平面なら 3 以上
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence, Tuple

import networkx as nx

from src.errors import PreconditionError
from src.graph.multigraph import Graph, betti, contract, girth

logger = logging.getLogger(__name__)

ChainStep = Tuple[str, int]
CHAIN_OPS = ("contract", "unsubdivide")


def counting_lower_bound(g: Graph) -> int:
    """
    ceil(girth * betti / m)。

    Raises:
        PreconditionError: 森 (サイクルが無い)
    """
    dim = betti(g)
    gi = girth(g)
    if dim == 0 or gi is None:
        raise PreconditionError("counting bound needs a graph with a cycle")
    return -(-gi * dim // g.m)


def cubic_girth_bound(n: int, k: int) -> int:
    """
    k-基底を持つ n 頂点の 3 正則グラフの girth の上界 floor(floor(3k/2) * n / (n/2 + 1))。
    これより girth が大きい 3 正則グラフの basis number は k より大きい。

    Raises:
        PreconditionError: n が奇数か 4 未満 / k < 1
    """
    if n < 4 or n % 2:
        raise PreconditionError(f"no cubic graph has {n} vertices")
    if k < 1:
        raise PreconditionError(f"charge bound must be positive, got {k}")
    return (3 * k // 2) * n // (n // 2 + 1)


def is_cubic(g: Graph) -> bool:
    return g.n > 0 and all(g.degree(v) == 3 for v in g.vertices)


def cubic_lower_bound(g: Graph) -> Optional[int]:
    """3 正則なら girth <= cubic_girth_bound(n, k) となる最小の k。3 正則でなければ None。"""
    if not is_cubic(g):
        return None
    gi = girth(g)
    k = 1
    while gi > cubic_girth_bound(g.n, k):
        k += 1
    return k


def planarity_lower_bound(g: Graph) -> int:
    """非平面なら 3。平面でサイクルがあれば 1、森なら 0。"""
    if betti(g) == 0:
        return 0
    planar, _ = nx.check_planarity(g.to_simple_networkx())
    return 1 if planar else 3


def certified_lower_bound(g: Graph) -> int:
    """数え上げ・3 正則の girth 上界・平面性のうち最も強いもの。森なら 0。"""
    if betti(g) == 0:
        return 0
    bound = counting_lower_bound(g)
    cubic = cubic_lower_bound(g)
    return max(bound, cubic or 0, planarity_lower_bound(g))


def apply_chain(g: Graph, chain: Sequence[ChainStep]) -> Graph:
    """
    縮約の連鎖を順に適用する。

    "contract" は任意の辺の縮約、"unsubdivide" は次数 2 の端点を持つ辺の縮約 (細分の逆)。
    辺 ID は元のグラフの ID (縮約は他の辺の ID を変えない)。

    Raises:
        PreconditionError: 不明な操作 / 辺が無い / unsubdivide の辺に次数 2 の端点が無い
    """
    cur = g
    for i, (op, eid) in enumerate(chain):
        if op not in CHAIN_OPS:
            raise PreconditionError(f"chain step {i}: unknown operation {op!r}")
        if not cur.has_edge(eid):
            raise PreconditionError(f"chain step {i}: edge {eid} is not in the graph")
        e = cur.edge(eid)
        if op == "unsubdivide" and (e.is_loop or (cur.degree(e.u) != 2 and cur.degree(e.v) != 2)):
            raise PreconditionError(f"chain step {i}: edge {eid} has no degree-2 end to smooth")
        cur, _ = contract(cur, eid)
    return cur


def lower_bound_by_contraction_chain(g: Graph, chain: Sequence[ChainStep], base_bound: Optional[int] = None) -> int:
    """
    連鎖の先のグラフの下界を g に引き戻す。

    Args:
        chain: apply_chain と同じ形式
        base_bound: 縮約先で証明済みの下界。None なら certified_lower_bound で求める

    Raises:
        PreconditionError: 連鎖が不正
    """
    base = apply_chain(g, chain)
    if base_bound is None:
        base_bound = certified_lower_bound(base)
    logger.info(f"contraction chain of {len(chain)} steps: base has n={base.n}, m={base.m}; "
                f"lower bound {base_bound} carries over")
    return base_bound
