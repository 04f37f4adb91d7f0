"""
カタログのエントリを検証する。

1 エントリについて:
- 標準のグラフの betti がカタログの値と一致するか
- 埋め込みごとに、フィクスチャのグラフが標準のグラフと同型か、classify のフラグが期待どおりか
- 当てはまる構成器 (full-crossing / ポピー / 連結な骨格 / 非連結な骨格) を走らせ、max charge を上界にする
- 下界 (数え上げ・3 正則の girth・平面性・縮約の連鎖) と、betti が小さければ厳密計算
- 判定: 下界 <= カタログの値 <= 上界 (カタログの値が下界としてだけ分かっているものは 下界 >= 値)

表のフラグと計算したフラグの食い違いは失敗ではなく notes に残す。
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
import pandas as pd

from src.catalog.registry import CatalogEntry, contraction_chain, entry_embedding, entry_graph, get_entry, list_entries
from src.constructions.auxiliary import disconnected_skeleton_8basis
from src.constructions.desargues import desargues_3basis
from src.constructions.facial import connected_skeleton_4basis
from src.constructions.orientation import balanced_skirt_orientation
from src.constructions.three_basis import fullcrossing_3basis, poppy_3basis
from src.cycle_space.edgeset import EdgeSet
from src.cycle_space.linalg import fundamental_cycles
from src.cycle_space.report import charges, verify_kbasis
from src.data_loader import search_defaults
from src.embedding.analysis import classify
from src.embedding.rotation import OnePlaneEmbedding
from src.errors import BasisNumberError, BudgetExceeded
from src.graph.multigraph import Graph, betti, is_two_connected, isomorphic
from src.search.bounds import (counting_lower_bound, cubic_lower_bound, lower_bound_by_contraction_chain,
                               planarity_lower_bound)
from src.search.budget import SearchBudget
from src.search.exact import exact_basis_number

logger = logging.getLogger(__name__)

EXPLICIT_BASES: Dict[str, Callable[[], Tuple[Graph, List[EdgeSet]]]] = {
    "desargues": desargues_3basis,
}


@dataclass
class BuilderRun:
    builder: str
    max_charge: Optional[int] = None
    error: Optional[str] = None


@dataclass
class EmbeddingCheck:
    key: str
    isomorphic: bool
    profile: Dict[str, Any]
    mismatches: List[str] = field(default_factory=list)
    builders: List[BuilderRun] = field(default_factory=list)


@dataclass
class EntryReport:
    name: str
    n: int
    m: int
    betti: int
    expected: int
    expected_is_lower_bound: bool
    lower: int = 0
    lower_sources: Dict[str, int] = field(default_factory=dict)
    upper: Optional[int] = None
    upper_sources: Dict[str, int] = field(default_factory=dict)
    exact: Optional[int] = None
    embeddings: List[EmbeddingCheck] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["passed"] = self.passed
        return out


# ---------- 上界 ----------

def max_charge(g: Graph, basis: List[EdgeSet]) -> int:
    ch = charges(g, basis)
    return int(ch.max()) if len(ch) and basis else 0


def short_cycle_upper_bound(g: Graph) -> Optional[int]:
    """networkx の最小サイクル基底の max charge。単純グラフでなければ None。"""
    if not g.is_simple():
        return None
    index = {frozenset((e.u, e.v)): e.id for e in g.edges}
    basis = []
    for cycle in nx.minimum_cycle_basis(g.to_simple_networkx()):
        # 頂点の並びは巡回順とは限らない
        ordered = _cycle_order(g, list(cycle))
        basis.append(EdgeSet.of(index[frozenset(p)] for p in zip(ordered, ordered[1:] + ordered[:1])))
    report = verify_kbasis(g, basis, 0)
    if not report.generates:
        return None
    return report.max_charge


def _cycle_order(g: Graph, ring: List[int]) -> List[int]:
    inside = set(ring)
    start = min(ring)
    order = [start]
    prev = None
    cur = start
    while len(order) < len(ring):
        nxt = min(w for w in g.neighbors(cur) if w in inside and w != prev and w not in order)
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _run_builder(name: str, fn: Callable[[], List[EdgeSet]], g: Graph) -> BuilderRun:
    try:
        basis = fn()
    except BasisNumberError as e:
        logger.warning(f"{name} failed: {e}")
        return BuilderRun(name, error=str(e))
    return BuilderRun(name, max_charge=max_charge(g, basis))


def _check_embedding(entry: CatalogEntry, key: str, canonical: Graph, report: EntryReport) -> EmbeddingCheck:
    setup = entry.embeddings[key]
    emb: OnePlaneEmbedding = entry_embedding(entry.name, key)
    g = emb.graph
    profile = classify(emb)
    check = EmbeddingCheck(key, isomorphic(g, canonical), profile.to_dict())
    if not check.isomorphic:
        report.failures.append(f"{key}: embedded graph is not isomorphic to {entry.name}")

    for flag, want in setup.get("expected", {}).items():
        got = check.profile.get(flag)
        if got != want:
            check.mismatches.append(f"{flag}: expected {want}, got {got}")
            report.failures.append(f"{key}: {flag} expected {want}, got {got}")
    for flag, want in (entry.table_flags or {}).items():
        got = check.profile.get(flag)
        if got != want:
            report.notes.append(f"{key}: published flag {flag}={want} differs from computed {got}")

    if profile.full_crossing and is_two_connected(g):
        check.builders.append(_run_builder("fullcrossing_3basis", lambda: fullcrossing_3basis(emb), g))
    if profile.poppy:
        orientation = balanced_skirt_orientation(emb)
        want_balanced = setup.get("balanced_orientation", True)
        if (orientation is not None) != want_balanced:
            report.failures.append(f"{key}: balanced skirt orientation expected={want_balanced}, "
                                   f"found={orientation is not None}")
        if orientation is None:
            check.builders.append(BuilderRun("poppy_3basis", error="no balanced skirt orientation"))
        else:
            check.builders.append(_run_builder("poppy_3basis", lambda: poppy_3basis(emb, orientation), g))
    if profile.connected_skeleton:
        check.builders.append(_run_builder("connected_skeleton_4basis", lambda: connected_skeleton_4basis(emb), g))
    else:
        check.builders.append(_run_builder("disconnected_skeleton_8basis",
                                           lambda: disconnected_skeleton_8basis(emb), g))
    for run in check.builders:
        if run.max_charge is not None:
            report.upper_sources[f"{key}:{run.builder}"] = run.max_charge
    return check


# ---------- 下界 ----------

def _lower_bounds(entry: CatalogEntry, g: Graph) -> Dict[str, int]:
    out = {"counting": counting_lower_bound(g), "planarity": planarity_lower_bound(g)}
    cubic = cubic_lower_bound(g)
    if cubic is not None:
        out["cubic_girth"] = cubic
    chain = contraction_chain(entry.name)
    if chain:
        out["contraction_chain"] = lower_bound_by_contraction_chain(g, chain)
    return out


def _verdict(report: EntryReport) -> None:
    if report.expected_is_lower_bound:
        if report.lower < report.expected:
            report.failures.append(f"certified lower bound {report.lower} is below the catalog value {report.expected}")
        return
    if report.lower > report.expected:
        report.failures.append(f"lower bound {report.lower} exceeds the catalog value {report.expected}")
    if report.upper is not None and report.upper < report.expected:
        report.failures.append(f"upper bound {report.upper} is below the catalog value {report.expected}")
    if report.exact is not None and report.exact != report.expected:
        report.failures.append(f"exact search gives {report.exact}, catalog says {report.expected}")


def verify_entry(name: str, budget: Optional[SearchBudget] = None, run_exact: bool = True) -> EntryReport:
    """
    Args:
        name: エントリ名
        budget: 厳密計算の予算。None なら SearchBudget.from_env()
        run_exact: betti が catalog.exact_max_betti 以下なら厳密計算もする

    Raises:
        UnknownEntryError: 名前がカタログに無い
    """
    entry = get_entry(name)
    g = entry_graph(name)
    report = EntryReport(entry.name, g.n, g.m, betti(g), entry.basis_number, entry.basis_number_is_lower_bound)
    logger.info(f"verifying {name}: n={g.n}, m={g.m}, betti={report.betti}")
    if report.betti != entry.betti:
        report.failures.append(f"betti is {report.betti}, catalog says {entry.betti}")

    for key in sorted(entry.embeddings):
        report.embeddings.append(_check_embedding(entry, key, g, report))

    if entry.explicit_basis:
        bg, basis = EXPLICIT_BASES[entry.explicit_basis]()
        if not isomorphic(bg, g):
            report.failures.append(f"explicit basis {entry.explicit_basis} lives on a different graph")
        else:
            report.upper_sources[f"explicit:{entry.explicit_basis}"] = max_charge(bg, basis)

    report.upper_sources["fundamental_cycles"] = max_charge(g, fundamental_cycles(g))
    short = short_cycle_upper_bound(g)
    if short is not None:
        report.upper_sources["minimum_cycle_basis"] = short

    report.lower_sources = _lower_bounds(entry, g)
    limit = search_defaults()["catalog"]["exact_max_betti"]
    if run_exact and report.betti <= limit:
        try:
            cert = exact_basis_number(g, budget or SearchBudget.from_env())
        except BudgetExceeded as e:
            report.notes.append(f"exact search stopped: {e}")
            if e.lower is not None:
                report.lower_sources["exact_partial"] = e.lower
        else:
            report.exact = cert.value
            report.lower_sources["exact"] = cert.value
            report.upper_sources["exact"] = cert.value

    report.lower = max(report.lower_sources.values())
    report.upper = min(report.upper_sources.values())
    _verdict(report)
    status = "ok" if report.passed else "FAILED"
    logger.info(f"{name}: {status} (lower {report.lower}, catalog {report.expected}, upper {report.upper})")
    return report


def verify_catalog(names: Optional[List[str]] = None, budget: Optional[SearchBudget] = None,
                   run_exact: bool = True) -> List[EntryReport]:
    names = names or [e.name for e in list_entries()]
    return [verify_entry(name, budget, run_exact) for name in names]


def summary_frame(reports: List[EntryReport]) -> pd.DataFrame:
    rows = [{
        "name": r.name,
        "n": r.n,
        "m": r.m,
        "betti": r.betti,
        "catalog": r.expected,
        "lower": r.lower,
        "upper": r.upper,
        "exact": r.exact,
        "embeddings": len(r.embeddings),
        "passed": r.passed,
        "notes": len(r.notes),
    } for r in reports]
    return pd.DataFrame(rows, columns=["name", "n", "m", "betti", "catalog", "lower", "upper", "exact",
                                       "embeddings", "passed", "notes"])
