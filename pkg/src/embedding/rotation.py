"""
1-plane 埋め込みの組合せ表現 (平面化グラフの回転系)。

設計:
- 平面化 G× の辺 (pedge) ごとに 2 本のダート: 2p は pedge の u→v、2p+1 は v→u
- 交差した抽象辺 (a, b) は 2 つの pedge に分かれる: 区間 0 = (a, x)、区間 1 = (x, b)。
  どちらもダート 2p の向きが抽象辺の a→b と一致する
- 面の走査は next(d) = succ(twin(d))。面 ID はその面に属するダートの最小値
- 座標は持たない。外面 ID は任意 (球面モードでは無視する)
- 構築時には検証しない (不正な埋め込みもデータとして作れる)。validate() が違反を列挙する
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from src.errors import EmbeddingError, PreconditionError
from src.graph.multigraph import Edge, Graph, components

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Face:
    id: int
    darts: Tuple[int, ...]
    vertices: Tuple[int, ...]
    crossed: bool

    def __len__(self) -> int:
        return len(self.darts)


def trace_faces(rotation: Dict[int, Sequence[int]], tail: Dict[int, int]) -> List[Tuple[int, ...]]:
    """回転系から面 (ダートの巡回列) を求める。各列は最小ダートから始まる。"""
    succ: Dict[int, int] = {}
    for v, darts in rotation.items():
        k = len(darts)
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % k]
    seen: Set[int] = set()
    out: List[Tuple[int, ...]] = []
    for start in sorted(succ):
        if start in seen:
            continue
        cyc = []
        d = start
        while d not in seen:
            seen.add(d)
            cyc.append(d)
            nxt = succ.get(d ^ 1)
            if nxt is None:
                break
            d = nxt
        out.append(tuple(cyc))
    return out


class OnePlaneEmbedding:
    """
    抽象グラフ + 平面化の回転系 + ダミー (交差) 登録簿。

    Args:
        graph: 抽象グラフ
        pedges: pedge ID -> (u, v) (平面化の頂点)
        segments: pedge ID -> (抽象辺 ID, 区間番号 0/1)
        dummies: ダミー頂点 -> 交差する抽象辺の組 (e, f)
        rotation: 平面化の頂点 -> ダートの巡回列
        outer_face: 外面の面 ID (球面モードなら None)
    """

    def __init__(
        self,
        graph: Graph,
        pedges: Dict[int, Tuple[int, int]],
        segments: Dict[int, Tuple[int, int]],
        dummies: Dict[int, Tuple[int, int]],
        rotation: Dict[int, Sequence[int]],
        outer_face: Optional[int] = None,
    ):
        self.graph = graph
        self.pedges: Dict[int, Tuple[int, int]] = {p: tuple(pedges[p]) for p in sorted(pedges)}
        self.segments: Dict[int, Tuple[int, int]] = {p: tuple(segments[p]) for p in sorted(segments)}
        self.dummies: Dict[int, Tuple[int, int]] = {x: tuple(dummies[x]) for x in sorted(dummies)}
        self.rotation: Dict[int, Tuple[int, ...]] = {v: tuple(rotation[v]) for v in sorted(rotation)}
        self.outer_face = outer_face

    # ---------- 基本参照 ----------

    def tail(self, d: int) -> int:
        u, v = self.pedges[d >> 1]
        return v if d & 1 else u

    def head(self, d: int) -> int:
        u, v = self.pedges[d >> 1]
        return u if d & 1 else v

    def is_dummy(self, v: int) -> bool:
        return v in self.dummies

    @property
    def planar_vertices(self) -> List[int]:
        return sorted(set(self.graph.vertices) | set(self.dummies))

    def planarization(self) -> Graph:
        return Graph(self.planar_vertices, [Edge(p, u, v) for p, (u, v) in self.pedges.items()])

    @cached_property
    def crossed_edges(self) -> Set[int]:
        return {eid for pair in self.dummies.values() for eid in pair}

    @cached_property
    def edge_segments(self) -> Dict[int, List[int]]:
        """抽象辺 ID -> pedge ID (区間番号順)。"""
        out: Dict[int, List[Tuple[int, int]]] = {}
        for p, (eid, seg) in self.segments.items():
            out.setdefault(eid, []).append((seg, p))
        return {eid: [p for _, p in sorted(v)] for eid, v in out.items()}

    def dummy_of(self, eid: int) -> Optional[int]:
        for x, pair in self.dummies.items():
            if eid in pair:
                return x
        return None

    @cached_property
    def _succ(self) -> Dict[int, int]:
        out = {}
        for darts in self.rotation.values():
            for i, d in enumerate(darts):
                out[d] = darts[(i + 1) % len(darts)]
        return out

    @cached_property
    def _pred(self) -> Dict[int, int]:
        return {b: a for a, b in self._succ.items()}

    def rot_succ(self, d: int) -> int:
        return self._succ[d]

    def rot_pred(self, d: int) -> int:
        return self._pred[d]

    def next_dart(self, d: int) -> int:
        return self._succ[d ^ 1]

    def prev_dart(self, d: int) -> int:
        return self._pred[d] ^ 1

    # ---------- 面 ----------

    @cached_property
    def faces(self) -> List[Face]:
        tails = {}
        for p, (u, v) in self.pedges.items():
            tails[2 * p] = u
            tails[2 * p + 1] = v
        out = []
        for darts in trace_faces(self.rotation, tails):
            verts = tuple(tails[d] for d in darts)
            out.append(Face(darts[0], darts, verts, any(v in self.dummies for v in verts)))
        return out

    @cached_property
    def _face_index(self) -> Dict[int, Face]:
        return {d: f for f in self.faces for d in f.darts}

    def face_of(self, d: int) -> Face:
        return self._face_index[d]

    def face(self, fid: int) -> Face:
        for f in self.faces:
            if f.id == fid:
                return f
        raise PreconditionError(f"unknown face id {fid}")

    # ---------- 検証 ----------

    def validate(self) -> List[str]:
        """
        型の不変条件をすべて確かめ、違反の説明を返す (空なら妥当)。

        ダミーの次数・交互性、区間構造、二重交差、隣接辺の交差、回転系の整合性、
        各連結成分のオイラーの公式、外面 ID を調べる。
        """
        out: List[str] = []
        g = self.graph
        pverts = set(self.planar_vertices)

        darts_at: Dict[int, List[int]] = {v: [] for v in pverts}
        for p, (u, v) in self.pedges.items():
            if u not in pverts or v not in pverts:
                out.append(f"segments: pedge {p} references unknown vertex")
                continue
            darts_at[u].append(2 * p)
            darts_at[v].append(2 * p + 1)

        for x, pair in self.dummies.items():
            if g.has_vertex(x):
                out.append(f"dummy degree: dummy {x} collides with an abstract vertex")
            if len(darts_at.get(x, [])) != 4:
                out.append(f"dummy degree: dummy {x} has degree {len(darts_at.get(x, []))}")

        owner: Dict[int, int] = {}
        for x, (e, f) in self.dummies.items():
            for eid in (e, f):
                if eid in owner:
                    out.append(f"edge crossed twice: edge {eid} at dummies {owner[eid]} and {x}")
                owner[eid] = x
            if not (g.has_edge(e) and g.has_edge(f)):
                out.append(f"segments: dummy {x} names unknown edges ({e}, {f})")
                continue
            ee, ff = g.edge(e), g.edge(f)
            if e == f or {ee.u, ee.v} & {ff.u, ff.v}:
                out.append(f"adjacent crossing: edges {e} and {f} share an endpoint at dummy {x}")

        for eid in g.edge_ids:
            e = g.edge(eid)
            segs = self.edge_segments.get(eid, [])
            x = owner.get(eid)
            if x is None:
                if len(segs) != 1 or set(self.pedges[segs[0]]) != {e.u, e.v}:
                    out.append(f"segments: uncrossed edge {eid} must be a single pedge between its endpoints")
            else:
                if len(segs) != 2 or self.pedges[segs[0]] != (e.u, x) or self.pedges[segs[1]] != (x, e.v):
                    out.append(f"segments: crossed edge {eid} must be split as ({e.u}, {x}), ({x}, {e.v})")
        for p in self.pedges:
            if p not in self.segments:
                out.append(f"segments: pedge {p} has no abstract edge")

        rotation_ok = True
        for v in pverts:
            got = sorted(self.rotation.get(v, ()))
            if got != sorted(darts_at[v]):
                out.append(f"rotation: vertex {v} rotation does not list exactly its darts")
                rotation_ok = False
        if set(self.rotation) - pverts:
            out.append("rotation: rotation given for unknown vertices")
            rotation_ok = False

        if rotation_ok:
            for x, (e, f) in self.dummies.items():
                rot = self.rotation.get(x, ())
                if len(rot) != 4:
                    continue
                owners = [self.segments.get(d >> 1, (None, None))[0] for d in rot]
                if not (owners[0] == owners[2] and owners[1] == owners[3] and owners[0] != owners[1]
                        and {owners[0], owners[1]} == {e, f}):
                    out.append(f"dummy rotation: crossing edges do not alternate at dummy {x}")
            out.extend(self._euler_violations())
            if self.outer_face is not None and self.outer_face not in {f.id for f in self.faces}:
                out.append(f"outer face: {self.outer_face} is not a face id")
        return out

    def _euler_violations(self) -> List[str]:
        pg = self.planarization()
        comp_of = {}
        for i, comp in enumerate(components(pg)):
            for v in comp:
                comp_of[v] = i
        ncomp = len(set(comp_of.values()))
        V = [0] * ncomp
        E = [0] * ncomp
        F = [0] * ncomp
        for v, i in comp_of.items():
            V[i] += 1
        for u, _ in self.pedges.values():
            E[comp_of[u]] += 1
        for f in self.faces:
            F[comp_of[f.vertices[0]]] += 1
        out = []
        for i in range(ncomp):
            faces = F[i] if E[i] else 1
            if V[i] - E[i] + faces != 2:
                out.append(f"euler: component {i} has V={V[i]} E={E[i]} F={faces}")
        return out

    def check(self) -> "OnePlaneEmbedding":
        violations = self.validate()
        if violations:
            raise EmbeddingError(violations)
        return self

    # ---------- 派生 ----------

    def skeleton(self) -> Graph:
        """交差していない抽象辺だけからなる部分グラフ (頂点は全部)。"""
        return self.graph.edge_subgraph(eid for eid in self.graph.edge_ids if eid not in self.crossed_edges)

    def with_outer_face(self, fid: Optional[int]) -> "OnePlaneEmbedding":
        return OnePlaneEmbedding(self.graph, self.pedges, self.segments, self.dummies, self.rotation, fid)

    def builder(self) -> "EmbeddingBuilder":
        return EmbeddingBuilder.from_embedding(self)

    def restrict(self, keep_edge_ids: Iterable[int]) -> "OnePlaneEmbedding":
        """
        keep_edge_ids の抽象辺だけを残した部分埋め込み。相手を失った交差は解消され、
        残った辺は区間 0 の pedge ID を引き継いだ 1 本の pedge になる。
        """
        keep = set(keep_edge_ids)
        b = self.builder()
        for eid in self.graph.edge_ids:
            if eid not in keep:
                b.remove_edge(eid)
        return b.freeze()

    def __repr__(self) -> str:
        return f"<OnePlaneEmbedding(n={self.graph.n}, m={self.graph.m}, crossings={len(self.dummies)})>"


class EmbeddingBuilder:
    """
    回転系を局所操作で組み立てる可変ビルダー。生成器・修復・変換が使う。
    抽象頂点とダミー頂点は同じカウンタから採番する。
    """

    def __init__(self):
        self.vertices: Set[int] = set()
        self.edges: Dict[int, Tuple[int, int]] = {}
        self.pedges: Dict[int, Tuple[int, int]] = {}
        self.segments: Dict[int, Tuple[int, int]] = {}
        self.dummies: Dict[int, Tuple[int, int]] = {}
        self.rotation: Dict[int, List[int]] = {}
        self.next_vertex = 0
        self.next_edge = 0
        self.next_pedge = 0
        self.outer_face: Optional[int] = None

    @classmethod
    def from_embedding(cls, emb: OnePlaneEmbedding) -> "EmbeddingBuilder":
        b = cls()
        b.vertices = set(emb.graph.vertices)
        b.edges = {e.id: (e.u, e.v) for e in emb.graph.edges}
        b.pedges = dict(emb.pedges)
        b.segments = dict(emb.segments)
        b.dummies = dict(emb.dummies)
        b.rotation = {v: list(ds) for v, ds in emb.rotation.items()}
        b.next_vertex = max([emb.graph.next_vertex_id] + [x + 1 for x in emb.dummies])
        b.next_edge = emb.graph.next_edge_id
        b.next_pedge = max(emb.pedges) + 1 if emb.pedges else 0
        return b

    @classmethod
    def from_graph_rotation(cls, g: Graph, rotation: Dict[int, Sequence[Tuple[int, int]]]) -> "EmbeddingBuilder":
        """
        平面グラフの回転 (頂点 -> [(辺 ID, 端の向き)]) から作る。pedge ID は抽象辺 ID と同じ。
        端の向き 0 は辺の u 側、1 は v 側。
        """
        b = cls()
        b.vertices = set(g.vertices)
        b.edges = {e.id: (e.u, e.v) for e in g.edges}
        b.pedges = {e.id: (e.u, e.v) for e in g.edges}
        b.segments = {e.id: (e.id, 0) for e in g.edges}
        b.rotation = {v: [2 * eid + side for eid, side in rotation.get(v, ())] for v in g.vertices}
        b.next_vertex = g.next_vertex_id
        b.next_edge = g.next_edge_id
        b.next_pedge = g.next_edge_id
        return b

    # ---------- 参照 ----------

    def tail(self, d: int) -> int:
        u, v = self.pedges[d >> 1]
        return v if d & 1 else u

    def head(self, d: int) -> int:
        u, v = self.pedges[d >> 1]
        return u if d & 1 else v

    def succ(self, d: int) -> int:
        rot = self.rotation[self.tail(d)]
        return rot[(rot.index(d) + 1) % len(rot)]

    def next_dart(self, d: int) -> int:
        return self.succ(d ^ 1)

    def face_walk(self, d: int) -> List[int]:
        out = [d]
        cur = self.next_dart(d)
        while cur != d:
            out.append(cur)
            cur = self.next_dart(cur)
        return out

    def edge_segments(self, eid: int) -> List[int]:
        return [p for _, p in sorted((seg, p) for p, (e, seg) in self.segments.items() if e == eid)]

    def freeze(self) -> OnePlaneEmbedding:
        g = Graph(self.vertices, [Edge(eid, u, v) for eid, (u, v) in self.edges.items()],
                  next_edge_id=self.next_edge, next_vertex_id=self.next_vertex)
        return OnePlaneEmbedding(g, self.pedges, self.segments, self.dummies, self.rotation, self.outer_face)

    # ---------- 局所操作 ----------

    def add_vertex(self) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        self.vertices.add(v)
        self.rotation[v] = []
        return v

    def add_pedge(self, u: int, v: int, eid: int, seg: int) -> int:
        p = self.next_pedge
        self.next_pedge += 1
        self.pedges[p] = (u, v)
        self.segments[p] = (eid, seg)
        return p

    def _insert_at_corner(self, v: int, arriving: Optional[int], dart: int) -> None:
        """頂点 v の、ダート arriving で到着する面の角にダートを差し込む。"""
        rot = self.rotation.setdefault(v, [])
        if arriving is None:
            if rot:
                raise PreconditionError(f"vertex {v} is not isolated; a corner is required")
            rot.append(dart)
            return
        rot.insert(rot.index(arriving ^ 1) + 1, dart)

    def add_edge_in_face(self, a: int, a_in: Optional[int], b: int, b_in: Optional[int],
                         eid: Optional[int] = None) -> int:
        """
        同じ面の角 (a, a_in) と (b, b_in) を結ぶ非交差の抽象辺を加え、その ID を返す。
        a_in は面が a に到着するダート (孤立頂点なら None)。eid を渡すと削除済みの辺 ID を再利用する。
        """
        if eid is None:
            eid = self.next_edge
            self.next_edge += 1
        elif eid in self.edges:
            raise PreconditionError(f"edge id {eid} is still in use")
        self.edges[eid] = (a, b)
        p = self.add_pedge(a, b, eid, 0)
        self._insert_at_corner(a, a_in, 2 * p)
        self._insert_at_corner(b, b_in, 2 * p + 1)
        return eid

    def subdivide_edge(self, eid: int) -> Tuple[int, int]:
        """
        非交差の抽象辺 (u, v) を u-w-v に分ける。u-w は eid を引き継ぎ、w-v は新辺。

        Returns:
            (新頂点 w, 新辺 ID)
        """
        segs = self.edge_segments(eid)
        if len(segs) != 1:
            raise PreconditionError(f"edge {eid} is crossed; only uncrossed edges can be subdivided here")
        p = segs[0]
        u, v = self.pedges[p]
        w = self.add_vertex()
        fresh = self.next_edge
        self.next_edge += 1
        self.edges[eid] = (u, w)
        self.edges[fresh] = (w, v)
        self.pedges[p] = (u, w)
        q = self.add_pedge(w, v, fresh, 0)
        rot_v = self.rotation[v]
        rot_v[rot_v.index(2 * p + 1)] = 2 * q + 1
        self.rotation[w] = [2 * p + 1, 2 * q]
        return w, fresh

    def insert_crossing_in_face(self, corners: Sequence[Tuple[int, int]]) -> Tuple[int, int, int]:
        """
        1 つの面の 4 つの角 (面の走査順に a, b, c, d; 各要素は (頂点, 到着ダート)) に
        交差する 2 辺 a-c, b-d を描き込む。

        Returns:
            (ダミー頂点 x, 辺 a-c の ID, 辺 b-d の ID)
        """
        (a, a_in), (b, b_in), (c, c_in), (d, d_in) = corners
        if len({a, b, c, d}) != 4:
            raise PreconditionError(f"crossing corners must be four distinct vertices, got {a, b, c, d}")
        x = self.next_vertex
        self.next_vertex += 1
        self.rotation[x] = []
        e = self.next_edge
        f = e + 1
        self.next_edge += 2
        self.edges[e] = (a, c)
        self.edges[f] = (b, d)
        p_ax = self.add_pedge(a, x, e, 0)
        p_xc = self.add_pedge(x, c, e, 1)
        p_bx = self.add_pedge(b, x, f, 0)
        p_xd = self.add_pedge(x, d, f, 1)
        self._insert_at_corner(a, a_in, 2 * p_ax)
        self._insert_at_corner(b, b_in, 2 * p_bx)
        self._insert_at_corner(c, c_in, 2 * p_xc + 1)
        self._insert_at_corner(d, d_in, 2 * p_xd + 1)
        # 面 [a..b, x], [b..c, x], [c..d, x], [d..a, x] ができる向き
        self.rotation[x] = [2 * p_ax + 1, 2 * p_xd, 2 * p_xc, 2 * p_bx + 1]
        self.dummies[x] = (e, f)
        return x, e, f

    def _drop_dart(self, d: int) -> None:
        rot = self.rotation[self.tail(d)]
        rot.remove(d)

    def dissolve(self, x: int) -> None:
        """ダミー x を解消する。残っている交差辺の 2 区間を 1 本の pedge に戻す。"""
        for eid in self.dummies.pop(x):
            if eid not in self.edges:
                continue
            segs = self.edge_segments(eid)
            if len(segs) != 2:
                continue
            p0, p1 = segs
            u, _ = self.pedges[p0]
            _, v = self.pedges[p1]
            self.pedges[p0] = (u, v)
            rot_v = self.rotation[v]
            rot_v[rot_v.index(2 * p1 + 1)] = 2 * p0 + 1
            del self.pedges[p1]
            del self.segments[p1]
        self.rotation.pop(x, None)

    def remove_edge(self, eid: int) -> None:
        """抽象辺を消す。交差していれば相手の辺の交差も解消する。"""
        x = next((x for x, pair in self.dummies.items() if eid in pair), None)
        for p in self.edge_segments(eid):
            for d in (2 * p, 2 * p + 1):
                if self.tail(d) != x:
                    self._drop_dart(d)
            del self.pedges[p]
            del self.segments[p]
        del self.edges[eid]
        if x is not None:
            rot_x = self.rotation[x]
            rot_x[:] = [d for d in rot_x if (d >> 1) in self.pedges]
            self.dissolve(x)
