"""
基底 JSON: {"graph": <graph JSON>, "elements": [[辺 ID, ...], ...]}
"""

from __future__ import annotations

from typing import Any, Dict, List, Sequence, Tuple

from src.cycle_space.edgeset import EdgeSet
from src.errors import InvalidGraphError
from src.graph.io import graph_from_dict, graph_to_dict
from src.graph.multigraph import Graph


def basis_to_dict(g: Graph, elements: Sequence[EdgeSet]) -> Dict[str, Any]:
    return {"graph": graph_to_dict(g), "elements": [s.ids() for s in elements]}


def basis_from_dict(data: Dict[str, Any]) -> Tuple[Graph, List[EdgeSet]]:
    """
    Raises:
        InvalidGraphError: 形式が不正、または 1 つの要素に同じ辺 ID が重複している
    """
    try:
        g = graph_from_dict(data["graph"])
        items = [[int(x) for x in item] for item in data["elements"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidGraphError(f"malformed basis JSON: {e}") from e
    for i, ids in enumerate(items):
        if len(set(ids)) != len(ids):
            # EdgeSet.of は XOR で畳むので、重複は黙って消える
            raise InvalidGraphError(f"basis element {i} lists an edge id twice: {sorted(ids)}")
    return g, [EdgeSet.of(ids) for ids in items]
