"""
端子付きグラフ (H, s, t) と ℓ-拡張基底 (基底 + ℓ 本の st-パス)。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.report import charges, verify_kbasis
from src.errors import InvalidBasisError, PreconditionError
from src.graph.multigraph import Graph, is_connected


@dataclass(frozen=True)
class TerminalGraph:
    graph: Graph
    s: int
    t: int

    def __post_init__(self):
        g = self.graph
        if self.s == self.t:
            raise PreconditionError("terminals must differ")
        if not (g.has_vertex(self.s) and g.has_vertex(self.t)):
            raise PreconditionError(f"terminals {self.s}, {self.t} are not vertices of the graph")
        if not is_connected(g):
            raise PreconditionError("terminal graph must be connected")

    @classmethod
    def parallel_pair(cls) -> "TerminalGraph":
        return cls(Graph.from_edge_list([(0, 1), (0, 1)]), 0, 1)

    @classmethod
    def path(cls, length: int = 2) -> "TerminalGraph":
        if length < 1:
            raise PreconditionError(f"path length must be positive, got {length}")
        return cls(Graph.from_edge_list([(i, i + 1) for i in range(length)]), 0, length)


@dataclass(frozen=True)
class AugmentedBasis:
    basis: List[EdgeSet]
    paths: List[EdgeSet]
    k: int

    def charge(self, g: Graph) -> np.ndarray:
        return charges(g, list(self.basis) + list(self.paths))


def is_st_path(g: Graph, path: EdgeSet, s: int, t: int) -> bool:
    """path が s から t への単純パスか。"""
    ids = path.ids()
    if not ids:
        return False
    degree = {}
    for eid in ids:
        e = g.edge(eid)
        if e.is_loop:
            return False
        degree[e.u] = degree.get(e.u, 0) + 1
        degree[e.v] = degree.get(e.v, 0) + 1
    if degree.get(s) != 1 or degree.get(t) != 1:
        return False
    if any(d != 2 for v, d in degree.items() if v not in (s, t)):
        return False
    return is_connected(g.with_edges([g.edge(e) for e in ids], vertices=degree.keys()))


def check_augmented(h: TerminalGraph, ab: AugmentedBasis) -> None:
    """
    Raises:
        InvalidBasisError: 基底でない / パスが st-パスでない / charge が k を超える
    """
    report = verify_kbasis(h.graph, ab.basis, ab.k)
    if not (report.eulerian and report.independent and report.generates):
        raise InvalidBasisError("augmented basis: not a basis of the terminal graph", report)
    for i, p in enumerate(ab.paths):
        if not is_st_path(h.graph, p, h.s, h.t):
            raise InvalidBasisError(f"augmented basis: path {i} is not a simple s-t path")
    ch = ab.charge(h.graph)
    if len(ch) and int(ch.max()) > ab.k:
        raise InvalidBasisError(f"augmented basis: charge {int(ch.max())} exceeds k={ab.k}")


def parallel_pair_augmented(ell: int) -> AugmentedBasis:
    """二重辺: 2-サイクル 1 つと、パスを 2 辺に交互に割り振る。k = 1 + ceil(ℓ/2)。"""
    paths = [EdgeSet.of([i % 2]) for i in range(ell)]
    return AugmentedBasis([EdgeSet.of([0, 1])], paths, 1 + (ell + 1) // 2)


def path_augmented(h: TerminalGraph, ell: int) -> AugmentedBasis:
    """パスそのもの: 基底は空、同じパスを ℓ 回使う。k = ℓ。"""
    whole = EdgeSet.of(h.graph.edge_ids)
    return AugmentedBasis([], [whole] * ell, ell)
