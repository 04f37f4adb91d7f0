"""
サイクル空間の GF(2) 線形代数。

設計:
- ピボットは最下位ビット。入力順に処理し、独立なものを先着順で残す
- 各ピボット行は「入力のどの要素の和か」を組合せマスクとして持ち、decompose に使う
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.cycle_space.edgeset import EdgeSet, check_edges
from src.errors import CapExceeded, PreconditionError
from src.graph.multigraph import Graph, SpanningForest, betti, components, spanning_forest

logger = logging.getLogger(__name__)


class GF2Eliminator:
    """最下位ビットをピボットにした増分ガウス消去。"""

    def __init__(self):
        self._rows: Dict[int, Tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, bits: int) -> Tuple[int, int]:
        """(残差, 組合せマスク)。残差 0 なら従属。"""
        combo = 0
        while bits:
            low = bits & -bits
            row = self._rows.get(low)
            if row is None:
                break
            bits ^= row[0]
            combo ^= row[1]
        return bits, combo

    def add(self, bits: int, index: int) -> bool:
        """index 番目の要素を追加する。独立なら True。"""
        residual, combo = self.reduce(bits)
        if residual == 0:
            return False
        self._rows[residual & -residual] = (residual, combo ^ (1 << index))
        return True

    # ---------- 探索用 (取り消し可能な追加) ----------

    def push(self, bits: int) -> Optional[int]:
        """独立なら追加してピボットを返す。従属なら None。組合せマスクは持たない。"""
        residual, _ = self.reduce(bits)
        if residual == 0:
            return None
        pivot = residual & -residual
        self._rows[pivot] = (residual, 0)
        return pivot

    def pop(self, pivot: int) -> None:
        del self._rows[pivot]

    def copy(self) -> "GF2Eliminator":
        out = GF2Eliminator()
        out._rows = dict(self._rows)
        return out


def rank(sets: Iterable[EdgeSet]) -> int:
    elim = GF2Eliminator()
    for i, s in enumerate(sets):
        elim.add(s.bits, i)
    return len(elim)


def decompose(target: EdgeSet, basis: Sequence[EdgeSet]) -> Optional[List[int]]:
    """
    target を basis の要素の和として表す添字 (昇順)。張る空間に無ければ None。
    """
    elim = GF2Eliminator()
    for i, s in enumerate(basis):
        elim.add(s.bits, i)
    residual, combo = elim.reduce(target.bits)
    if residual != 0:
        return None
    return EdgeSet(combo).ids()


def extract_basis(g: Graph, generating: Sequence[EdgeSet]) -> List[EdgeSet]:
    """
    生成系から先着順に独立な要素を拾って基底を作る。部分集合なので charge は増えない。

    Raises:
        PreconditionError: 生成系の階数が betti(g) に届かない
    """
    elim = GF2Eliminator()
    out: List[EdgeSet] = []
    for i, s in enumerate(generating):
        if elim.add(s.bits, i):
            out.append(s)
    dim = betti(g)
    if len(out) != dim:
        raise PreconditionError(f"input does not generate the cycle space (rank {len(out)}, dimension {dim})")
    return out


def is_eulerian(g: Graph, s: EdgeSet) -> bool:
    """全頂点の次数が偶数か。ループは次数 2 として数える。"""
    check_edges(g, s)
    odd = set()
    for eid in s.ids():
        e = g.edge(eid)
        if e.is_loop:
            continue
        odd ^= {e.u}
        odd ^= {e.v}
    return not odd


def fundamental_cycles(g: Graph, forest: Optional[SpanningForest] = None) -> List[EdgeSet]:
    """
    全域森の非木辺ごとの基本サイクル (辺 ID 昇順)。

    Raises:
        PreconditionError: forest が g の全域森でない (閉路を含む場合も)
    """
    if forest is None:
        forest = spanning_forest(g)
    tree = forest.tree_edges
    if any(not g.has_edge(eid) for eid in tree) or len(tree) != g.n - len(components(g)):
        raise PreconditionError("forest does not match the graph")
    # 辺 k 本の森はちょうど n - k 成分
    if len(components(g.edge_subgraph(tree))) != g.n - len(tree):
        raise PreconditionError("forest edges contain a cycle")
    if any(v not in forest.depth for v in g.vertices):
        raise PreconditionError("forest does not span the graph")
    out = []
    for e in g.edges:
        if e.id in tree:
            continue
        out.append(EdgeSet.of(forest.path(e.u, e.v) + [e.id]))
    return out


def enumerate_cycle_space(g: Graph, cap: int) -> List[EdgeSet]:
    """
    サイクル空間の全要素 (空集合を含む 2^betti 個)。Gray code 順に 1 要素ずつ XOR して作る。

    Raises:
        CapExceeded: 2^betti が cap を超える
    """
    dim = betti(g)
    size = 1 << dim
    if size > cap:
        raise CapExceeded(size, cap)
    gens = fundamental_cycles(g)
    out = [EdgeSet()]
    cur = 0
    for i in range(1, size):
        flip = (i & -i).bit_length() - 1
        cur ^= gens[flip].bits
        out.append(EdgeSet(cur))
    return out
