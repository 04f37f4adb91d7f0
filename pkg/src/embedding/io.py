"""
埋め込みの入出力。

- 埋め込み JSON: グラフ JSON + "segments" / "rotations" / "dummies" / 任意の "outer_face"
- 図の書き起こし (フィクスチャ): 平面化の面を頂点列で並べた形式。回転系は面から復元する
  {"name", "graph": [[u, v], ...], "crossings": [{"dummy": "x0", "pair": [e, f]}], "faces": [...], "checksum"}
  checksum は [graph, [[dummy, e, f], ...], faces] のコンパクト JSON の sha256
"""

from __future__ import annotations

import hashlib
import json
import logging
from typing import Any, Dict, List, Sequence, Tuple, Union

from src.embedding.rotation import OnePlaneEmbedding
from src.errors import EmbeddingError, InvalidGraphError
from src.graph.io import graph_from_dict, graph_to_dict
from src.graph.multigraph import Edge, Graph

logger = logging.getLogger(__name__)

Label = Union[int, str]


def embedding_to_dict(emb: OnePlaneEmbedding) -> Dict[str, Any]:
    out = graph_to_dict(emb.graph)
    out["segments"] = [
        {"id": p, "u": u, "v": v, "edge": emb.segments[p][0], "segment": emb.segments[p][1]}
        for p, (u, v) in emb.pedges.items()
    ]
    out["rotations"] = {str(v): list(ds) for v, ds in emb.rotation.items()}
    out["dummies"] = [{"vertex": x, "pair": list(pair)} for x, pair in emb.dummies.items()]
    if emb.outer_face is not None:
        out["outer_face"] = emb.outer_face
    return out


def embedding_from_dict(data: Dict[str, Any]) -> OnePlaneEmbedding:
    try:
        g = graph_from_dict(data)
        pedges = {int(s["id"]): (int(s["u"]), int(s["v"])) for s in data["segments"]}
        segments = {int(s["id"]): (int(s["edge"]), int(s["segment"])) for s in data["segments"]}
        rotation = {int(v): [int(d) for d in ds] for v, ds in data["rotations"].items()}
        dummies = {int(d["vertex"]): (int(d["pair"][0]), int(d["pair"][1])) for d in data.get("dummies", [])}
        outer = data.get("outer_face")
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InvalidGraphError(f"malformed embedding JSON: {e}") from e
    g = Graph(g.vertices, g.edges, next_vertex_id=max([g.next_vertex_id] + [x + 1 for x in dummies]))
    return OnePlaneEmbedding(g, pedges, segments, dummies, rotation, None if outer is None else int(outer))


def embedding_to_dot(emb: OnePlaneEmbedding, name: str = "G") -> str:
    """平面化を DOT で出す。ダミーは小さな四角。"""
    lines = [f"graph {name} {{"]
    for v in emb.planar_vertices:
        if emb.is_dummy(v):
            lines.append(f'  {v} [shape=square, width=0.1, label=""];')
        else:
            lines.append(f"  {v};")
    for p, (u, v) in emb.pedges.items():
        eid, seg = emb.segments[p]
        style = ", style=dashed" if eid in emb.crossed_edges else ""
        lines.append(f'  {u} -- {v} [label="{eid}.{seg}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------- 面からの復元 ----------

def fixture_checksum(edges: Sequence[Sequence[int]], crossings: Sequence[Tuple[str, int, int]],
                     faces: Sequence[Sequence[Label]]) -> str:
    payload = json.dumps(
        [[list(e) for e in edges], [[d, e, f] for d, e, f in crossings], [list(f) for f in faces]],
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def from_faces(
    edges: Sequence[Sequence[int]],
    crossings: Sequence[Tuple[str, int, int]],
    faces: Sequence[Sequence[Label]],
    n: int = None,
) -> OnePlaneEmbedding:
    """
    平面化の面 (頂点ラベルの巡回列、全面で向きをそろえる) から埋め込みを作る。
    面の中で a→b の次が b→c なら、b の回転で twin(a→b) の次が b→c。

    Args:
        edges: 抽象辺 (u, v) の並び (辺 ID は位置)
        crossings: (ダミーのラベル, 辺 e, 辺 f)
        faces: 面ごとの頂点ラベル列。抽象頂点は整数、ダミーは文字列
        n: 頂点数 (省略時は端点の最大値 + 1)

    Raises:
        EmbeddingError: 面の記述がダートをちょうど 1 回ずつ使っていない / 回転が 1 周にならない
    """
    g = Graph.from_edge_list([tuple(e) for e in edges], n)
    base = g.next_vertex_id
    dummy_id = {label: base + i for i, (label, _, _) in enumerate(crossings)}
    crossed = {}
    for label, e, f in crossings:
        for eid in (e, f):
            crossed[eid] = dummy_id[label]

    pedges: Dict[int, Tuple[int, int]] = {}
    segments: Dict[int, Tuple[int, int]] = {}
    for e in g.edges:
        if e.id in crossed:
            x = crossed[e.id]
            p = len(pedges)
            pedges[p] = (e.u, x)
            segments[p] = (e.id, 0)
            pedges[p + 1] = (x, e.v)
            segments[p + 1] = (e.id, 1)
        else:
            p = len(pedges)
            pedges[p] = (e.u, e.v)
            segments[p] = (e.id, 0)

    lookup: Dict[Tuple[int, int], List[int]] = {}
    for p, (u, v) in pedges.items():
        lookup.setdefault((u, v), []).append(2 * p)
        lookup.setdefault((v, u), []).append(2 * p + 1)

    def vid(label: Label) -> int:
        return dummy_id[label] if isinstance(label, str) else int(label)

    used = set()
    succ: Dict[int, int] = {}
    errors: List[str] = []
    for fi, face in enumerate(faces):
        seq = [vid(x) for x in face]
        darts = []
        for i in range(len(seq)):
            cand = lookup.get((seq[i], seq[(i + 1) % len(seq)]), [])
            if len(cand) != 1:
                errors.append(f"face {fi}: step {seq[i]}->{seq[(i + 1) % len(seq)]} matches {len(cand)} darts")
                continue
            d = cand[0]
            if d in used:
                errors.append(f"face {fi}: dart {d} used twice")
            used.add(d)
            darts.append(d)
        if len(darts) == len(seq):
            for i, d in enumerate(darts):
                succ[d ^ 1] = darts[(i + 1) % len(darts)]
    missing = [d for p in pedges for d in (2 * p, 2 * p + 1) if d not in used]
    if missing:
        errors.append(f"darts {missing} appear in no face")
    if errors:
        raise EmbeddingError(errors)

    tails = {}
    for p, (u, v) in pedges.items():
        tails[2 * p] = u
        tails[2 * p + 1] = v
    at: Dict[int, List[int]] = {}
    for d, t in tails.items():
        at.setdefault(t, []).append(d)
    rotation: Dict[int, List[int]] = {}
    for v, ds in at.items():
        start = min(ds)
        cyc = [start]
        d = succ[start]
        while d != start and len(cyc) <= len(ds):
            cyc.append(d)
            d = succ[d]
        if len(cyc) != len(ds):
            raise EmbeddingError([f"rotation: faces around vertex {v} do not close into one cycle"])
        rotation[v] = cyc
    for v in list(g.vertices) + list(dummy_id.values()):
        rotation.setdefault(v, [])
    dummies = {dummy_id[label]: (e, f) for label, e, f in crossings}
    g = Graph(g.vertices, g.edges, next_vertex_id=base + len(crossings))
    return OnePlaneEmbedding(g, pedges, segments, dummies, rotation)


def fixture_from_dict(data: Dict[str, Any], verify_checksum: bool = True) -> OnePlaneEmbedding:
    edges = [tuple(e) for e in data["graph"]]
    crossings = [(c["dummy"], int(c["pair"][0]), int(c["pair"][1])) for c in data.get("crossings", [])]
    faces = data["faces"]
    if verify_checksum and "checksum" in data:
        got = fixture_checksum(edges, crossings, faces)
        if got != data["checksum"]:
            raise EmbeddingError([f"checksum mismatch for {data.get('name')}: {got}"])
    emb = from_faces(edges, crossings, faces, data.get("n"))
    violations = emb.validate()
    if violations:
        raise EmbeddingError(violations)
    return emb
