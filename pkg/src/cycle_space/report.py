"""
k-基底の監査 (BasisReport)。

charge は辺 ID を添字にした numpy 配列で持ち、JSON には密な配列として出す。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

import numpy as np

from src.cycle_space.edgeset import EdgeSet, check_edges
from src.cycle_space.linalg import is_eulerian, rank
from src.errors import InvalidBasisError
from src.graph.multigraph import Graph, betti

logger = logging.getLogger(__name__)


def charges(g: Graph, sets: Sequence[EdgeSet]) -> np.ndarray:
    """辺 ID ごとの charge (その辺を含む要素の数)。長さは最大辺 ID + 1。"""
    size = max(g.edge_ids) + 1 if g.m else 0
    out = np.zeros(size, dtype=np.int64)
    for s in sets:
        check_edges(g, s)
        ids = s.ids()
        if ids:
            out[ids] += 1
    return out


@dataclass
class BasisReport:
    elements: List[EdgeSet]
    dimension: int
    rank: int
    independent: bool
    generates: bool
    eulerian: bool
    charge: np.ndarray
    max_charge: int
    k: int

    @property
    def verdict(self) -> bool:
        return self.eulerian and self.independent and self.generates and self.max_charge <= self.k

    def charge_of(self, eid: int) -> int:
        return int(self.charge[eid]) if eid < len(self.charge) else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "dimension": self.dimension,
            "size": len(self.elements),
            "rank": self.rank,
            "independent": self.independent,
            "generates": self.generates,
            "eulerian": self.eulerian,
            "charges": [int(x) for x in self.charge],
            "max_charge": self.max_charge,
            "verdict": self.verdict,
        }


def verify_kbasis(g: Graph, candidate: Sequence[EdgeSet], k: int) -> BasisReport:
    """
    候補集合が g の k-基底か監査する。

    independent = (階数 == 要素数)、generates = (階数 == betti(g))、
    verdict は全要素が Eulerian かつ両者が真かつ最大 charge <= k のとき真。

    Raises:
        ForeignEdgeError: g に無い辺 ID を含む
    """
    elements = list(candidate)
    ch = charges(g, elements)
    r = rank(elements)
    dim = betti(g)
    return BasisReport(
        elements=elements,
        dimension=dim,
        rank=r,
        independent=r == len(elements),
        generates=r == dim,
        eulerian=all(is_eulerian(g, s) for s in elements),
        charge=ch,
        max_charge=int(ch.max()) if len(ch) and elements else 0,
        k=k,
    )


def ensure_kbasis(g: Graph, candidate: Sequence[EdgeSet], k: int, what: str) -> BasisReport:
    """verify_kbasis して、偽なら InvalidBasisError。構成器の出口で必ず呼ぶ。"""
    report = verify_kbasis(g, candidate, k)
    if not report.verdict:
        raise InvalidBasisError(
            f"{what}: not a {k}-basis (rank {report.rank}/{report.dimension}, "
            f"independent={report.independent}, eulerian={report.eulerian}, max charge {report.max_charge})",
            report,
        )
    logger.info(f"{what}: {k}-basis verified (dimension {report.dimension}, max charge {report.max_charge})")
    return report
