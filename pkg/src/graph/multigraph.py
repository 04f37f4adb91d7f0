"""
辺 ID を持つ多重グラフと、その上の構造プリミティブ。

設計:
- 頂点は整数 ID、辺は (id, u, v) のレコード。ループ・多重辺を許し、辺 ID で区別する
- Graph は構築後イミュータブル。変換はすべて新しい Graph を返す
- 新しい辺/頂点には next_edge_id / next_vertex_id から採番し、消えた ID は再利用しない
- 決定性のため、走査は常に ID 昇順
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from src.errors import InvalidGraphError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise InvalidGraphError(f"vertex {x} is not an endpoint of edge {self.id}")


EdgeLike = Union[Edge, Tuple[int, int, int]]


class Graph:
    """
    ラベル付き多重グラフ。

    Args:
        vertices: 頂点 ID の列
        edges: Edge もしくは (id, u, v) の列
        next_edge_id: 次に採番する辺 ID の下限 (削除済み ID の再利用防止)
        next_vertex_id: 次に採番する頂点 ID の下限
    """

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[EdgeLike] = (),
        next_edge_id: Optional[int] = None,
        next_vertex_id: Optional[int] = None,
    ):
        self._vertices: Tuple[int, ...] = tuple(sorted(set(vertices)))
        vset = set(self._vertices)
        table: Dict[int, Edge] = {}
        for item in edges:
            e = item if isinstance(item, Edge) else Edge(*item)
            if e.id in table:
                raise InvalidGraphError(f"duplicate edge id {e.id}")
            if e.id < 0:
                raise InvalidGraphError(f"negative edge id {e.id}")
            if e.u not in vset or e.v not in vset:
                raise InvalidGraphError(f"edge {e.id} references a missing vertex ({e.u}, {e.v})")
            table[e.id] = e
        self._edges: Dict[int, Edge] = {eid: table[eid] for eid in sorted(table)}
        self._inc: Dict[int, List[int]] = {v: [] for v in self._vertices}
        for e in self._edges.values():
            self._inc[e.u].append(e.id)
            if not e.is_loop:
                self._inc[e.v].append(e.id)

        max_e = max(self._edges) + 1 if self._edges else 0
        max_v = self._vertices[-1] + 1 if self._vertices else 0
        self.next_edge_id = max(max_e, next_edge_id or 0)
        self.next_vertex_id = max(max_v, next_vertex_id or 0)

    @classmethod
    def from_edge_list(cls, pairs: Sequence[Tuple[int, int]], n: Optional[int] = None) -> "Graph":
        """(u, v) の並びから作る。辺 ID は並びの位置。n 省略時は端点の最大値 + 1 頂点。"""
        if n is None:
            n = max((max(p) for p in pairs), default=-1) + 1
        return cls(range(n), [Edge(i, int(u), int(v)) for i, (u, v) in enumerate(pairs)])

    # ---------- 参照 ----------

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> List[Edge]:
        return list(self._edges.values())

    @property
    def edge_ids(self) -> List[int]:
        return list(self._edges)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def edge(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise InvalidGraphError(f"unknown edge id {eid}") from None

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def has_vertex(self, v: int) -> bool:
        return v in self._inc

    def incident(self, v: int) -> List[int]:
        return list(self._inc[v])

    def degree(self, v: int) -> int:
        return sum(2 if self._edges[eid].is_loop else 1 for eid in self._inc[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self._vertices), default=0)

    def neighbors(self, v: int) -> List[int]:
        return sorted({self._edges[eid].other(v) for eid in self._inc[v]})

    def is_simple(self) -> bool:
        seen = set()
        for e in self._edges.values():
            if e.is_loop:
                return False
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                return False
            seen.add(key)
        return True

    # ---------- 生成 ----------

    def with_edges(self, edges: Iterable[EdgeLike], vertices: Optional[Iterable[int]] = None) -> "Graph":
        """ID カウンタを引き継いだまま、辺集合 (と頂点集合) を差し替えた Graph を返す。"""
        return Graph(
            self._vertices if vertices is None else vertices,
            edges,
            next_edge_id=self.next_edge_id,
            next_vertex_id=self.next_vertex_id,
        )

    def edge_subgraph(self, keep: Iterable[int]) -> "Graph":
        """頂点はすべて残し、keep に含まれる辺だけを残す。"""
        keep = set(keep)
        return self.with_edges(e for e in self._edges.values() if e.id in keep)

    def relabel_edges(self, mapping: Dict[int, int]) -> "Graph":
        return Graph(
            self._vertices,
            [Edge(mapping.get(e.id, e.id), e.u, e.v) for e in self._edges.values()],
            next_edge_id=max([self.next_edge_id] + [x + 1 for x in mapping.values()]),
            next_vertex_id=self.next_vertex_id,
        )

    def to_networkx(self) -> nx.MultiGraph:
        mg = nx.MultiGraph()
        mg.add_nodes_from(self._vertices)
        for e in self._edges.values():
            mg.add_edge(e.u, e.v, key=e.id)
        return mg

    def to_simple_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from((e.u, e.v) for e in self._edges.values() if not e.is_loop)
        return g

    @classmethod
    def from_networkx(cls, mg: nx.Graph) -> "Graph":
        """networkx のグラフから作る。MultiGraph の整数キーは辺 ID として使う。"""
        nodes = sorted(mg.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        if mg.is_multigraph():
            items = sorted(mg.edges(keys=True), key=lambda t: (t[2], index[t[0]], index[t[1]]))
            if all(isinstance(k, int) for _, _, k in items) and len({k for _, _, k in items}) == len(items):
                return cls(range(len(nodes)), [Edge(k, index[u], index[v]) for u, v, k in items])
            pairs = [(index[u], index[v]) for u, v, _ in items]
        else:
            pairs = sorted((min(index[u], index[v]), max(index[u], index[v])) for u, v in mg.edges())
        return cls(range(len(nodes)), [Edge(i, u, v) for i, (u, v) in enumerate(pairs)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.values())))

    def __repr__(self) -> str:
        return f"<Graph(n={self.n}, m={self.m})>"


# ---------- 全域森 ----------

@dataclass(frozen=True)
class SpanningForest:
    """BFS 全域森。parent[v] = (親頂点, 木辺 ID)、根は parent を持たない。"""

    tree_edges: FrozenSet[int]
    parent: Dict[int, Tuple[int, int]] = field(hash=False)
    depth: Dict[int, int] = field(hash=False)
    roots: Tuple[int, ...] = ()

    def path(self, u: int, v: int) -> List[int]:
        """森の中の u-v パスの辺 ID (u 側から順に)。別成分なら PreconditionError。"""
        left: List[int] = []
        right: List[int] = []
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            p, eid = self.parent[a]
            left.append(eid)
            a = p
        while self.depth[b] > self.depth[a]:
            p, eid = self.parent[b]
            right.append(eid)
            b = p
        while a != b:
            if a not in self.parent or b not in self.parent:
                raise PreconditionError(f"vertices {u} and {v} lie in different components")
            pa, ea = self.parent[a]
            pb, eb = self.parent[b]
            left.append(ea)
            right.append(eb)
            a, b = pa, pb
        return left + right[::-1]


def spanning_forest(g: Graph, root: Optional[int] = None) -> SpanningForest:
    """
    決定的な BFS 全域森。最小 ID の未訪問頂点 (root 指定時はまず root) から、
    接続辺を ID 昇順に探索する。
    """
    parent: Dict[int, Tuple[int, int]] = {}
    depth: Dict[int, int] = {}
    tree: Set[int] = set()
    roots: List[int] = []
    order = list(g.vertices)
    if root is not None:
        if not g.has_vertex(root):
            raise InvalidGraphError(f"unknown root {root}")
        order.remove(root)
        order.insert(0, root)
    for r in order:
        if r in depth:
            continue
        roots.append(r)
        depth[r] = 0
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for eid in g.incident(x):
                y = g.edge(eid).other(x)
                if y in depth:
                    continue
                depth[y] = depth[x] + 1
                parent[y] = (x, eid)
                tree.add(eid)
                queue.append(y)
    return SpanningForest(frozenset(tree), parent, depth, tuple(roots))


# ---------- 連結性 ----------

def components(g: Graph) -> List[List[int]]:
    """連結成分の頂点リスト (成分内は昇順、成分は最小頂点の昇順)。"""
    seen: Set[int] = set()
    out: List[List[int]] = []
    for r in g.vertices:
        if r in seen:
            continue
        comp = [r]
        seen.add(r)
        stack = [r]
        while stack:
            x = stack.pop()
            for eid in g.incident(x):
                y = g.edge(eid).other(x)
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def betti(g: Graph) -> int:
    """サイクル空間の次元 m - n + c。"""
    return g.m - g.n + len(components(g))


def blocks(g: Graph) -> List[FrozenSet[int]]:
    """
    辺 ID のブロック分割 (極大 2-連結部分グラフ)。橋とループは単独ブロック。

    反復 DFS の lowpoint 法。多重辺は親辺と ID が異なれば後退辺として扱う。
    ブロックは最小辺 ID の昇順で返す。
    """
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    edge_stack: List[int] = []
    out: List[FrozenSet[int]] = []
    clock = 0

    non_loop = {v: [eid for eid in g.incident(v) if not g.edge(eid).is_loop] for v in g.vertices}

    for r in g.vertices:
        if r in disc:
            continue
        disc[r] = low[r] = clock
        clock += 1
        stack = [(r, -1, iter(non_loop[r]))]
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == parent_edge:
                    continue
                w = g.edge(eid).other(v)
                if w not in disc:
                    edge_stack.append(eid)
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, eid, iter(non_loop[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(eid)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] >= disc[p]:
                comp = []
                while True:
                    x = edge_stack.pop()
                    comp.append(x)
                    if x == parent_edge:
                        break
                out.append(frozenset(comp))

    out.extend(frozenset([e.id]) for e in g.edges if e.is_loop)
    return sorted(out, key=min)


def is_two_connected(g: Graph) -> bool:
    """ループなしで 1 ブロック、かつ 3 頂点以上 (もしくは多重辺だけの 2 頂点) なら True。"""
    if g.m == 0 or not is_connected(g):
        return False
    if any(e.is_loop for e in g.edges):
        return False
    bl = blocks(g)
    return len(bl) == 1 and (g.n >= 3 or g.m >= 2)


def isomorphic(a: Graph, b: Graph, match_edge_ids: bool = False) -> bool:
    """
    多重グラフとして同型か。match_edge_ids なら辺 ID を保つ同型 (頂点の付け替えだけ) に限る。
    """
    if a.n != b.n or a.m != b.m:
        return False
    if match_edge_ids:
        if a.edge_ids != b.edge_ids:
            return False
        return nx.is_isomorphic(a.to_networkx(), b.to_networkx(), edge_match=lambda x, y: set(x) == set(y))
    return nx.is_isomorphic(a.to_networkx(), b.to_networkx(), edge_match=lambda x, y: len(x) == len(y))


def girth(g: Graph) -> Optional[int]:
    """最短サイクル長。ループは 1、多重辺は 2。森なら None。"""
    if any(e.is_loop for e in g.edges):
        return 1
    best: Optional[int] = None
    for r in g.vertices:
        dist = {r: 0}
        via = {r: -1}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] >= best:
                break
            for eid in g.incident(x):
                if eid == via[x]:
                    continue
                y = g.edge(eid).other(x)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = eid
                    queue.append(y)
                else:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


# ---------- 変換プリミティブ ----------

def add_edge(g: Graph, u: int, v: int) -> Tuple[Graph, int]:
    if not (g.has_vertex(u) and g.has_vertex(v)):
        raise InvalidGraphError(f"cannot add edge between unknown vertices {u}, {v}")
    eid = g.next_edge_id
    return g.with_edges(g.edges + [Edge(eid, u, v)]), eid


def vertex_split(g: Graph, v: int, part_a: Iterable[int], part_b: Iterable[int]) -> Tuple[Graph, int, int]:
    """
    頂点 v を隣接する 2 頂点に分割する。

    part_a の辺は v (ID を引き継ぐ) に、part_b の辺は新頂点 w に付け替え、
    v-w を新しい辺で結ぶ。新辺を縮約すると元のグラフ (ID の付け替えを除く) に戻る。

    Returns:
        (新グラフ, 新頂点 w, 新辺 ID)
    Raises:
        PreconditionError: 分割が v の接続辺をちょうど 2 つの非空集合に分けていない
    """
    if not g.has_vertex(v):
        raise PreconditionError(f"unknown vertex {v}")
    a, b = set(part_a), set(part_b)
    inc = set(g.incident(v))
    if not a or not b or a & b or (a | b) != inc:
        raise PreconditionError(f"invalid split partition at vertex {v}: {sorted(a)} / {sorted(b)}")
    w = g.next_vertex_id
    fresh = g.next_edge_id
    edges = []
    for e in g.edges:
        if e.id in b:
            edges.append(Edge(e.id, w if e.u == v else e.u, w if e.v == v else e.v))
        else:
            edges.append(e)
    edges.append(Edge(fresh, v, w))
    out = Graph(list(g.vertices) + [w], edges, next_edge_id=fresh + 1, next_vertex_id=w + 1)
    return out, w, fresh


def contract(g: Graph, eid: int) -> Tuple[Graph, Optional[int]]:
    """
    辺 eid を縮約する。両端点は新しい頂点 z に併合され、ループ・多重辺はそのまま残る。
    ループの縮約は削除と同じ。

    Returns:
        (新グラフ, 併合後の頂点 z。ループだった場合は None)
    """
    e = g.edge(eid)
    if e.is_loop:
        return g.with_edges(x for x in g.edges if x.id != eid), None
    z = g.next_vertex_id

    def remap(x: int) -> int:
        return z if x in (e.u, e.v) else x

    edges = [Edge(x.id, remap(x.u), remap(x.v)) for x in g.edges if x.id != eid]
    vertices = [x for x in g.vertices if x not in (e.u, e.v)] + [z]
    return Graph(vertices, edges, next_edge_id=g.next_edge_id, next_vertex_id=z + 1), z


def subdivide(g: Graph, eid: int) -> Tuple[Graph, int, int]:
    """
    辺 eid = (u, v) を u-w-v の 2 辺パスに置き換える。u-w は eid を引き継ぎ、w-v が新辺。

    Returns:
        (新グラフ, 新頂点 w, 新辺 ID)
    """
    e = g.edge(eid)
    w = g.next_vertex_id
    fresh = g.next_edge_id
    edges = [x for x in g.edges if x.id != eid] + [Edge(eid, e.u, w), Edge(fresh, w, e.v)]
    out = Graph(list(g.vertices) + [w], edges, next_edge_id=fresh + 1, next_vertex_id=w + 1)
    return out, w, fresh
