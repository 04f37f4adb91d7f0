"""
Graph の JSON / DOT 入出力。

JSON: {"vertices": [0, 1, ...], "edges": [{"id": 0, "u": 0, "v": 1}, ...]}
出力は sort_keys + 固定セパレータで、同じ入力からは常にバイト単位で同じ文字列になる。
"""

from __future__ import annotations

import json
from typing import Any, Dict, Iterable, Optional

from src.errors import InvalidGraphError
from src.graph.multigraph import Edge, Graph


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def graph_to_dict(g: Graph) -> Dict[str, Any]:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "u": e.u, "v": e.v} for e in g.edges],
    }


def graph_from_dict(data: Dict[str, Any]) -> Graph:
    try:
        vertices = [int(v) for v in data["vertices"]]
        edges = [Edge(int(e["id"]), int(e["u"]), int(e["v"])) for e in data["edges"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidGraphError(f"malformed graph JSON: {e}") from e
    return Graph(vertices, edges)


def graph_to_dot(g: Graph, name: str = "G", highlight: Optional[Iterable[int]] = None,
                 square_vertices: Optional[Iterable[int]] = None) -> str:
    """
    graphviz 用の DOT 文字列。レイアウトは graphviz 任せ。

    Args:
        highlight: 太線で描く辺 ID
        square_vertices: 小さな四角で描く頂点 (交差のダミー頂点など)
    """
    bold = set(highlight or ())
    squares = set(square_vertices or ())
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        if v in squares:
            lines.append(f'  {v} [shape=square, width=0.1, label=""];')
        else:
            lines.append(f"  {v};")
    for e in g.edges:
        attrs = [f'label="{e.id}"']
        if e.id in bold:
            attrs.append("penwidth=3")
        lines.append(f"  {e.u} -- {e.v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
