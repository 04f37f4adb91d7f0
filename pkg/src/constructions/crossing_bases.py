"""
交差 1 つ分の基底 (K4 と、その辺を細分したポピー)。

K4 の頂点 u0..u3 はサイクル順、辺 j は u_j-u_{j+1}、弦は u0-u2 と u1-u3。
各辺に {1, 1, 2, 2} を割り当てると、1 の辺の組に応じて全域木を選ぶ:
- 隣り合う組 {j, j+1}: u_{j+3} を中心とする星
- 向かい合う組 {j, j+2}: パス u_{j+1}-u_{j+2}-u_j-u_{j+3}
その基本サイクルでは charge が割当て以下、弦は 3 以下になる。
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from src.cycle_space.edgeset import EdgeSet, sum_sets
from src.embedding.analysis import crossing_surrounding_cycle, skirt_walks
from src.embedding.rotation import OnePlaneEmbedding
from src.errors import PreconditionError

logger = logging.getLogger(__name__)

# 交差ごとの割当て。スカート歩道 (x の回転順) ごとに 1 か 2
SkirtAssignment = Dict[int, Tuple[int, int, int, int]]


def check_assignment(values: Sequence[int]) -> None:
    if len(values) != 4 or Counter(values) != Counter({1: 2, 2: 2}):
        raise PreconditionError(f"assignment must be a permutation of (1, 1, 2, 2), got {tuple(values)}")


def _tree(sides: Sequence[int]) -> List[Tuple[int, int]]:
    ones = [j for j in range(4) if sides[j] == 1]
    a, b = ones
    if (b - a) % 4 == 2:
        j = a
        path = [(j + 1) % 4, (j + 2) % 4, j, (j + 3) % 4]
        return list(zip(path, path[1:]))
    j = a if (a + 1) % 4 == b else b
    center = (j + 3) % 4
    return [(center, v) for v in range(4) if v != center]


def _k4_cycles(sides: Sequence[EdgeSet], chords: Tuple[EdgeSet, EdgeSet], assignment: Sequence[int]) -> List[EdgeSet]:
    check_assignment(assignment)
    parts = {frozenset((j, (j + 1) % 4)): sides[j] for j in range(4)}
    parts[frozenset((0, 2))] = chords[0]
    parts[frozenset((1, 3))] = chords[1]
    tree = nx.Graph(_tree(assignment))
    tree_keys = {frozenset(e) for e in tree.edges}
    out = []
    for key, part in parts.items():
        if key in tree_keys:
            continue
        a, b = sorted(key)
        path = nx.shortest_path(tree, a, b)
        out.append(sum_sets([part] + [parts[frozenset(step)] for step in zip(path, path[1:])]))
    return out


def k4_assignment_basis(sides: Sequence[int], chords: Tuple[int, int], assignment: Sequence[int]) -> List[EdgeSet]:
    """
    Args:
        sides: 辺 u_j-u_{j+1} の辺 ID (j = 0..3)
        chords: (u0-u2, u1-u3) の辺 ID
        assignment: 辺 j への割当て
    Returns:
        3 つの基本サイクル
    Raises:
        PreconditionError: 割当てが {1, 1, 2, 2} でない
    """
    return _k4_cycles([EdgeSet.of([s]) for s in sides], (EdgeSet.of([chords[0]]), EdgeSet.of([chords[1]])), assignment)


def poppy_frame(emb: OnePlaneEmbedding, x: int) -> Tuple[List[EdgeSet], Tuple[EdgeSet, EdgeSet]]:
    """
    ポピー x を細分された K4 とみなしたときの (辺 u_j-u_{j+1} の歩道, 弦)。
    u_j は x の回転で j 番目のダートの先の端点。歩道 i は u_i から u_{i-1} に進むので、
    辺 j は歩道 j+1 になる。
    """
    if crossing_surrounding_cycle(emb, x) is None:
        raise PreconditionError(f"crossing {x} is not a poppy")
    walks = skirt_walks(emb, x)
    sides = [EdgeSet.of(walks[(j + 1) % 4].abstract_edges(emb)) for j in range(4)]
    rot = emb.rotation[x]
    chords = (EdgeSet.of([emb.segments[rot[0] >> 1][0]]), EdgeSet.of([emb.segments[rot[1] >> 1][0]]))
    return sides, chords


def poppy_assignment_basis(emb: OnePlaneEmbedding, x: int, assignment: Sequence[int]) -> List[EdgeSet]:
    """
    ポピー x の基底 (3 要素)。assignment はスカート歩道ごと (x の回転順) の値で、
    各歩道の辺の charge はその値以下になる。

    Raises:
        PreconditionError: x がポピーでない / 割当てが不正
    """
    sides, chords = poppy_frame(emb, x)
    per_side = [assignment[(j + 1) % 4] for j in range(4)]
    return _k4_cycles(sides, chords, per_side)
