"""
GF(2) 上の辺集合ベクトル。ビット i が辺 ID i に対応し、和は XOR (対称差)。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List

from src.errors import ForeignEdgeError
from src.graph.multigraph import Graph


@dataclass(frozen=True, order=True)
class EdgeSet:
    bits: int = 0

    @classmethod
    def of(cls, ids: Iterable[int]) -> "EdgeSet":
        bits = 0
        for i in ids:
            bits ^= 1 << i
        return cls(bits)

    def ids(self) -> List[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def __xor__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.bits ^ other.bits)

    __add__ = __xor__

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids())

    def __contains__(self, eid: int) -> bool:
        return eid >= 0 and (self.bits >> eid) & 1 == 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def without(self, eid: int) -> "EdgeSet":
        return EdgeSet(self.bits & ~(1 << eid))

    def __repr__(self) -> str:
        return f"EdgeSet({self.ids()})"


def sum_sets(sets: Iterable[EdgeSet]) -> EdgeSet:
    bits = 0
    for s in sets:
        bits ^= s.bits
    return EdgeSet(bits)


def check_edges(g: Graph, s: EdgeSet) -> None:
    """s が g に存在しない辺 ID を含んでいれば ForeignEdgeError。"""
    foreign = [eid for eid in s.ids() if not g.has_edge(eid)]
    if foreign:
        raise ForeignEdgeError(f"edge ids {foreign} are not in the graph")
