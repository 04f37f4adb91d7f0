"""
既知グラフのカタログ (config/catalog.json) の読み込みと、各エントリのグラフ・埋め込みの生成。

グラフの与え方 (presentation.type):
- complete / complete_bipartite / hypercube: networkx の生成器
- generalized_petersen: GP(n, k)。外周 a-(a+1)、スポーク a-(n+a)、内周 (n+a)-(n+(a+k)%n)
- lcf: LCF 記法
- subdivided: 別エントリの辺 ID を 1 回ずつ細分したもの
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx

from src.data_loader import load_json
from src.embedding import generators
from src.embedding.io import fixture_from_dict
from src.embedding.rotation import OnePlaneEmbedding
from src.errors import PreconditionError, UnknownEntryError
from src.graph.multigraph import Graph, subdivide
from src.search.bounds import ChainStep

logger = logging.getLogger(__name__)

_GENERATED = {
    "crossed_c4": generators.crossed_c4,
    "cube_with_diagonals": generators.cube_with_diagonals,
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: Dict[str, Any]
    betti: int
    basis_number: int
    provenance: str
    basis_number_is_lower_bound: bool = False
    explicit_basis: Optional[str] = None
    table_flags: Optional[Dict[str, bool]] = None
    embeddings: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CatalogEntry":
        return cls(
            name=data["name"],
            presentation=dict(data["presentation"]),
            betti=int(data["betti"]),
            basis_number=int(data["basis_number"]),
            provenance=data.get("provenance", ""),
            basis_number_is_lower_bound=bool(data.get("basis_number_is_lower_bound", False)),
            explicit_basis=data.get("explicit_basis"),
            table_flags=data.get("table_flags"),
            embeddings=dict(data.get("embeddings", {})),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "presentation": self.presentation,
            "betti": self.betti,
            "basis_number": self.basis_number,
            "basis_number_is_lower_bound": self.basis_number_is_lower_bound,
            "provenance": self.provenance,
            "embeddings": sorted(self.embeddings),
        }


def list_entries() -> List[CatalogEntry]:
    return [CatalogEntry.from_dict(d) for d in load_json("catalog.json")["entries"]]


def get_entry(name: str) -> CatalogEntry:
    for entry in list_entries():
        if entry.name == name:
            return entry
    raise UnknownEntryError(f"no catalog entry named {name!r}")


# ---------- グラフ ----------

def generalized_petersen(n: int, k: int) -> Graph:
    if n < 3 or not 1 <= k < n / 2:
        raise PreconditionError(f"GP({n}, {k}) is not defined")
    pairs = [(a, (a + 1) % n) for a in range(n)]
    pairs += [(a, n + a) for a in range(n)]
    pairs += [(n + a, n + (a + k) % n) for a in range(n)]
    return Graph.from_edge_list(pairs, 2 * n)


def _from_simple(nxg: nx.Graph) -> Graph:
    return Graph.from_networkx(nx.convert_node_labels_to_integers(nxg, ordering="sorted"))


def _subdivided(p: Dict[str, Any]) -> Tuple[Graph, List[ChainStep]]:
    g = entry_graph(p["base"])
    chain: List[ChainStep] = []
    for eid in p["edges"]:
        if not g.has_edge(eid):
            raise PreconditionError(f"base graph {p['base']} has no edge {eid} to subdivide")
        g, _, fresh = subdivide(g, eid)
        chain.append(("unsubdivide", fresh))
    return g, chain


def _build_graph(p: Dict[str, Any]) -> Graph:
    kind = p["type"]
    if kind == "complete":
        return _from_simple(nx.complete_graph(p["n"]))
    if kind == "complete_bipartite":
        return _from_simple(nx.complete_bipartite_graph(p["a"], p["b"]))
    if kind == "hypercube":
        return _from_simple(nx.hypercube_graph(p["d"]))
    if kind == "generalized_petersen":
        return generalized_petersen(p["n"], p["k"])
    if kind == "lcf":
        return _from_simple(nx.LCF_graph(p["n"], p["shifts"], p["repeats"]))
    if kind == "generated":
        return _GENERATED[p["builder"]]().graph
    if kind == "subdivided":
        return _subdivided(p)[0]
    raise PreconditionError(f"unknown presentation type {kind!r}")


def entry_graph(name: str) -> Graph:
    """
    Raises:
        UnknownEntryError: 名前がカタログに無い
    """
    return _build_graph(get_entry(name).presentation)


def contraction_chain(name: str) -> List[ChainStep]:
    """細分で作ったエントリなら、元のグラフへ戻す unsubdivide の連鎖。それ以外は空。"""
    p = get_entry(name).presentation
    return _subdivided(p)[1] if p["type"] == "subdivided" else []


# ---------- 埋め込み ----------

def entry_embedding(name: str, key: Optional[str] = None) -> OnePlaneEmbedding:
    """
    Args:
        name: エントリ名
        key: 埋め込みのキー。None ならエントリの最初の埋め込み

    Raises:
        UnknownEntryError: エントリか埋め込みが無い
        EmbeddingError: フィクスチャが不正 (チェックサム不一致を含む)
    """
    entry = get_entry(name)
    if not entry.embeddings:
        raise UnknownEntryError(f"catalog entry {name!r} has no 1-plane embedding")
    if key is None:
        key = sorted(entry.embeddings)[0]
    if key not in entry.embeddings:
        raise UnknownEntryError(f"catalog entry {name!r} has no embedding {key!r}")
    setup = entry.embeddings[key]
    if "generated" in setup:
        return _GENERATED[setup["generated"]]()
    logger.debug(f"loading fixture {setup['fixture']} for {name}/{key}")
    return fixture_from_dict(load_json(f"embeddings/{setup['fixture']}"))
