"""
端子付きグラフの ℓ-拡張 basis number。

- planar_outer: 2-連結平面グラフで s, t が同じ面にあるとき、その面を外面にした面の 2-基底と
  外面の 2 本の弧で k = 2 (ℓ <= 2)
- exact: st-パスの多重集合を charge で枝刈りしながら列挙し、残りの容量で基底を探す。
  betti と候補パス数に上限があり、超えたら近似せずに CutoffExceeded
"""

from __future__ import annotations

import itertools
import logging
from typing import List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from src.constructions.facial import planar_2basis
from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import enumerate_cycle_space
from src.data_loader import search_defaults
from src.embedding.generators import from_plane_graph
from src.errors import CutoffExceeded, PreconditionError
from src.graph.multigraph import betti, is_two_connected
from src.search.budget import Clock, SearchBudget
from src.search.capacitated import find_capacitated_basis, order_candidates, uniform_capacity
from src.transforms.terminal import AugmentedBasis, TerminalGraph, check_augmented

logger = logging.getLogger(__name__)

MODES = ("exact", "planar_outer")


def augmented_basis_number(h: TerminalGraph, ell: int, mode: str = "exact",
                           budget: Optional[SearchBudget] = None) -> AugmentedBasis:
    """
    Args:
        h: 端子付きグラフ
        ell: 必要な st-パスの本数
        mode: "exact" | "planar_outer"
        budget: exact モードの予算。None なら SearchBudget.from_env()

    Raises:
        PreconditionError: モードの前提を満たさない
        CutoffExceeded: exact モードの規模上限を超えた
        BudgetExceeded: exact モードの予算切れ
    """
    if ell < 0:
        raise PreconditionError(f"path count must be non-negative, got {ell}")
    if mode == "planar_outer":
        return _planar_outer(h, ell)
    if mode != "exact":
        raise PreconditionError(f"unknown mode {mode!r}; expected one of {MODES}")
    return _exact(h, ell, budget or SearchBudget.from_env())


# ---------- planar_outer ----------

def _planar_outer(h: TerminalGraph, ell: int) -> AugmentedBasis:
    g = h.graph
    if ell > 2:
        raise PreconditionError(f"planar_outer mode provides at most 2 paths, {ell} requested")
    if not is_two_connected(g):
        raise PreconditionError("planar_outer mode needs a 2-connected terminal graph")
    emb = from_plane_graph(g, outer="none")
    shared = [f for f in emb.faces if h.s in f.vertices and h.t in f.vertices]
    if not shared:
        raise PreconditionError(f"terminals {h.s} and {h.t} share no face of the plane embedding")
    outer = max(shared, key=lambda f: (len(f), -f.id))
    basis = planar_2basis(emb.with_outer_face(outer.id))

    n = len(outer.darts)
    i_s = outer.vertices.index(h.s)
    i_t = outer.vertices.index(h.t)
    first = [outer.darts[(i_s + j) % n] for j in range((i_t - i_s) % n)]
    second = [outer.darts[(i_t + j) % n] for j in range((i_s - i_t) % n)]
    arcs = [EdgeSet.of(emb.segments[d >> 1][0] for d in arc) for arc in (first, second)]
    out = AugmentedBasis(basis, arcs[:ell], 2)
    check_augmented(h, out)
    return out


# ---------- exact ----------

def candidate_paths(h: TerminalGraph, limit: int) -> List[EdgeSet]:
    """単純な st-パス (辺 ID の集合) を (辺数, ビット列) の昇順で。"""
    mg = h.graph.to_networkx()
    found: Set[int] = set()
    for path in itertools.islice(nx.all_simple_edge_paths(mg, h.s, h.t), limit + 1):
        found.add(EdgeSet.of(key for _, _, key in path).bits)
    if len(found) > limit:
        raise CutoffExceeded(f"terminal graph has more than {limit} simple s-t paths")
    return sorted((EdgeSet(b) for b in found), key=lambda p: (len(p), p.bits))


def _path_loads(paths: List[EdgeSet], ell: int, k: int, size: int, clock: Clock):
    """charge <= k を守る ℓ 本の多重集合を、charge ベクトルの重複を除いて列挙する。"""
    load = np.zeros(size, dtype=np.int64)
    picked: List[int] = []
    seen: Set[Tuple[int, ...]] = set()
    edges = [np.array(p.ids(), dtype=np.int64) for p in paths]

    def rec(start: int):
        if len(picked) == ell:
            key = tuple(int(x) for x in load)
            if key not in seen:
                seen.add(key)
                yield list(picked), load.copy()
            return
        clock.tick()
        for i in range(start, len(paths)):
            if (load[edges[i]] >= k).any():
                continue
            load[edges[i]] += 1
            picked.append(i)
            yield from rec(i)
            picked.pop()
            load[edges[i]] -= 1

    yield from rec(0)


def _exact(h: TerminalGraph, ell: int, budget: SearchBudget) -> AugmentedBasis:
    g = h.graph
    cfg = search_defaults()["augmented"]
    dim = betti(g)
    if dim > cfg["max_betti"]:
        raise CutoffExceeded(f"exact augmented search is limited to betti <= {cfg['max_betti']}, got {dim}")
    paths = candidate_paths(h, cfg["max_paths_per_pair"]) if ell else []
    elements = order_candidates(enumerate_cycle_space(g, 1 << dim))
    clock = Clock(budget.max_nodes, budget.seconds)
    size = max(g.edge_ids) + 1 if g.m else 0

    k = 0 if ell == 0 and dim == 0 else 1
    while True:
        for picked, load in _path_loads(paths, ell, k, size, clock):
            basis = find_capacitated_basis(g, elements, uniform_capacity(g, k) - load, clock)
            if basis is None:
                continue
            out = AugmentedBasis(basis, [paths[i] for i in picked], k)
            check_augmented(h, out)
            logger.info(f"augmented basis number for ell={ell}: {k} ({clock.nodes} nodes)")
            return out
        logger.debug(f"no {ell}-augmented {k}-basis")
        k += 1

