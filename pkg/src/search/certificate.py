"""
basis number の証明書: 値 k、k-基底の証拠、下界の理由 (counting | exhaustion)。
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Dict, List

from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.report import BasisReport, ensure_kbasis
from src.errors import InvalidBasisError
from src.graph.io import dumps, graph_to_dict
from src.graph.multigraph import Graph

REASONS = ("counting", "exhaustion")


def fingerprint(g: Graph) -> str:
    """グラフ JSON (辺 ID 込み) の sha256。証明書の保存キー。"""
    return hashlib.sha256(dumps(graph_to_dict(g)).encode("utf-8")).hexdigest()


@dataclass
class BasisNumberCertificate:
    value: int
    witness: List[EdgeSet]
    lower_bound_reason: str
    exhaustive: bool
    counting_bound: int = 0
    nodes: int = 0
    elapsed: float = 0.0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.lower_bound_reason not in REASONS:
            raise InvalidBasisError(f"unknown lower-bound reason {self.lower_bound_reason!r}")

    def verify(self, g: Graph) -> BasisReport:
        return ensure_kbasis(g, self.witness, self.value, "certificate witness")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "witness": [s.ids() for s in self.witness],
            "lower_bound_reason": self.lower_bound_reason,
            "exhaustive": self.exhaustive,
            "counting_bound": self.counting_bound,
            "nodes": self.nodes,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BasisNumberCertificate":
        return cls(
            value=int(data["value"]),
            witness=[EdgeSet.of(ids) for ids in data["witness"]],
            lower_bound_reason=data["lower_bound_reason"],
            exhaustive=bool(data["exhaustive"]),
            counting_bound=int(data.get("counting_bound", 0)),
            nodes=int(data.get("nodes", 0)),
            notes=list(data.get("notes", [])),
        )
