"""
basis number ツールキットのコマンドライン。

出力は stdout に JSON 1 行 (sort_keys, 固定セパレータ)、ログは stderr。
終了コード: 0 = 成功, 1 = 判定が偽, 2 = 入力エラー, 3 = 予算切れ

使い方:
  python -m src.cli validate --input emb.json
  python -m src.cli classify < emb.json
  python -m src.cli construct --method full3 < emb.json
  python -m src.cli verify-kbasis -k 3 < basis.json
  python -m src.cli transform contract --edge 4 < basis.json
  python -m src.cli basis-number --exact --budget-seconds 30 < graph.json
  python -m src.cli catalog verify Desargues
  python -m src.cli unbounded-family --ell 5 < graph.json
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from typing import Any, Dict, List, Optional, TextIO

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.catalog.registry import entry_embedding, entry_graph, get_entry, list_entries  # noqa: E402
from src.catalog.verify import EXPLICIT_BASES, verify_entry  # noqa: E402
from src.config import load_config  # noqa: E402
from src.constructions.auxiliary import disconnected_skeleton_8basis  # noqa: E402
from src.constructions.facial import connected_skeleton_4basis, planar_2basis  # noqa: E402
from src.constructions.orientation import balanced_skirt_orientation  # noqa: E402
from src.constructions.three_basis import fullcrossing_3basis, poppy_3basis  # noqa: E402
from src.cycle_space.io import basis_from_dict, basis_to_dict  # noqa: E402
from src.cycle_space.linalg import fundamental_cycles  # noqa: E402
from src.cycle_space.report import charges, verify_kbasis  # noqa: E402
from src.db.client import CertificateStore  # noqa: E402
from src.embedding.analysis import classify  # noqa: E402
from src.embedding.generators import random_biconnected_plane, random_poppy_embedding  # noqa: E402
from src.embedding.io import embedding_from_dict, embedding_to_dict, embedding_to_dot, fixture_from_dict  # noqa: E402
from src.embedding.rotation import OnePlaneEmbedding  # noqa: E402
from src.errors import BasisNumberError, BudgetExceeded, CapExceeded, EmbeddingError, InvalidGraphError  # noqa: E402
from src.graph.io import dumps, graph_from_dict, graph_to_dict, graph_to_dot  # noqa: E402
from src.graph.multigraph import Graph  # noqa: E402
from src.search.bounds import certified_lower_bound  # noqa: E402
from src.search.budget import SearchBudget  # noqa: E402
from src.search.exact import basis_number_by_blocks, exact_basis_number  # noqa: E402
from src.transforms.augmented import MODES, augmented_basis_number  # noqa: E402
from src.transforms.edges import (add_edge_basis, contract_basis, duplicate_edge_basis,  # noqa: E402
                                  replace_edge_basis, subdivide_basis)
from src.transforms.terminal import TerminalGraph  # noqa: E402
from src.transforms.unbounded import unbounded_family  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

METHODS = ("facial", "sk4", "aux8", "full3", "poppy3", "desargues")


class CommandError(Exception):
    """判定が偽など、payload を出した上で exit code を変えたいとき。"""

    def __init__(self, payload: Dict[str, Any], code: int = EXIT_FALSE):
        super().__init__(payload.get("error", ""))
        self.payload = payload
        self.code = code


# ---------- 入力 ----------

def _read_json(args: argparse.Namespace, stdin: TextIO) -> Dict[str, Any]:
    if getattr(args, "input", None):
        with open(args.input, "r", encoding="utf-8") as f:
            return json.load(f)
    return json.load(stdin)


def _load_embedding(data: Dict[str, Any]) -> OnePlaneEmbedding:
    """埋め込み JSON かフィクスチャ ("faces" を持つ) のどちらか。"""
    if "faces" in data:
        return fixture_from_dict(data)
    return embedding_from_dict(data)


def _load_graph(data: Dict[str, Any]) -> Graph:
    if "graph" in data and "vertices" not in data:
        data = data["graph"]
    return graph_from_dict(data)


def _basis_payload(g: Graph, basis, k: int) -> Dict[str, Any]:
    report = verify_kbasis(g, basis, k)
    return {"basis": basis_to_dict(g, basis), "report": report.to_dict()}


# ---------- サブコマンド ----------

def cmd_validate(args, stdin) -> Dict[str, Any]:
    try:
        emb = _load_embedding(_read_json(args, stdin))
    except EmbeddingError as e:
        raise CommandError({"valid": False, "violations": e.violations})
    violations = emb.validate()
    payload = {"valid": not violations, "violations": violations}
    if violations:
        raise CommandError(payload)
    return payload


def cmd_classify(args, stdin) -> Dict[str, Any]:
    emb = _load_embedding(_read_json(args, stdin))
    return classify(emb).to_dict()


def cmd_construct(args, stdin) -> Dict[str, Any]:
    if args.method == "desargues":
        g, basis = EXPLICIT_BASES["desargues"]()
        return _basis_payload(g, basis, 3)
    emb = _load_embedding(_read_json(args, stdin))
    g = emb.graph
    if args.method == "facial":
        return _basis_payload(g, planar_2basis(emb), 2)
    if args.method == "sk4":
        return _basis_payload(g, connected_skeleton_4basis(emb), 4)
    if args.method == "aux8":
        return _basis_payload(g, disconnected_skeleton_8basis(emb), 8)
    if args.method == "full3":
        return _basis_payload(g, fullcrossing_3basis(emb, args.low_charge_edge), 3)
    orientation = balanced_skirt_orientation(emb)
    if orientation is None:
        raise CommandError({"infeasible": True, "error": "no balanced skirt orientation"})
    return _basis_payload(g, poppy_3basis(emb, orientation, args.low_charge_edge), 3)


def cmd_verify_kbasis(args, stdin) -> Dict[str, Any]:
    g, elements = basis_from_dict(_read_json(args, stdin))
    report = verify_kbasis(g, elements, args.k)
    payload = report.to_dict()
    if not report.verdict:
        raise CommandError(payload)
    return payload


def _load_terminal(path: str) -> TerminalGraph:
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    try:
        return TerminalGraph(graph_from_dict(data["graph"]), int(data["s"]), int(data["t"]))
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidGraphError(f"malformed terminal graph JSON: {e}") from e


def cmd_transform(args, stdin) -> Dict[str, Any]:
    g, basis = basis_from_dict(_read_json(args, stdin))
    op = args.op
    if op == "add-edge" and (args.u is None or args.v is None):
        raise InvalidGraphError("add-edge needs --u and --v")
    if op != "add-edge" and args.edge is None:
        raise InvalidGraphError(f"{op} needs --edge")
    if op == "contract":
        g2, b2 = contract_basis(g, basis, args.edge)
    elif op == "add-edge":
        g2, b2 = add_edge_basis(g, basis, args.u, args.v)
    elif op == "duplicate":
        g2, b2 = duplicate_edge_basis(g, basis, args.edge)
    elif op == "subdivide":
        g2, b2 = subdivide_basis(g, basis, args.edge)
    else:
        if not args.terminal:
            raise InvalidGraphError("replace-edge needs --terminal")
        h = _load_terminal(args.terminal)
        ell = int(charges(g, basis)[args.edge]) if g.has_edge(args.edge) else 0
        ab = augmented_basis_number(h, ell, mode=args.mode, budget=_budget(args))
        g2, b2 = replace_edge_basis(g, basis, args.edge, h, ab)
    ch = charges(g2, b2)
    return _basis_payload(g2, b2, int(ch.max()) if len(ch) and b2 else 0)


def _budget(args) -> SearchBudget:
    return SearchBudget.from_env(
        seconds=getattr(args, "budget_seconds", None),
        cap_dim=getattr(args, "cap_dim", None),
        max_nodes=getattr(args, "max_nodes", None),
        workers=getattr(args, "workers", None),
    )


def cmd_basis_number(args, stdin) -> Dict[str, Any]:
    g = entry_graph(args.entry) if args.entry else _load_graph(_read_json(args, stdin))
    if not args.exact:
        fundamental = charges(g, fundamental_cycles(g))
        return {
            "lower": certified_lower_bound(g),
            "upper": int(fundamental.max()) if len(fundamental) and g.m else 0,
            "exhaustive": False,
        }
    budget = _budget(args)
    cert = basis_number_by_blocks(g, budget) if args.by_blocks else exact_basis_number(g, budget, progress=args.progress)
    if args.store:
        db_path = args.db or load_config()["db_path"]
        os.makedirs(os.path.dirname(db_path) or ".", exist_ok=True)
        with CertificateStore(db_path) as store:
            store.add(g, cert, name=args.entry)
        logger.info(f"certificate stored in {db_path}")
    return cert.to_dict()


def cmd_catalog(args, stdin) -> Any:
    if args.action == "list":
        return {"entries": [e.to_dict() for e in list_entries()]}
    if not args.name:
        raise InvalidGraphError(f"catalog {args.action} needs an entry name")
    if args.action == "verify":
        report = verify_entry(args.name, _budget(args), run_exact=not args.no_exact)
        payload = report.to_dict()
        entry = get_entry(args.name)
        if entry.explicit_basis:
            g, basis = EXPLICIT_BASES[entry.explicit_basis]()
            payload["explicit_basis"] = _basis_payload(g, basis, entry.basis_number)
        if not report.passed:
            raise CommandError(payload)
        return payload
    # export
    if args.embedding:
        emb = entry_embedding(args.name, args.embedding)
        return embedding_to_dot(emb, _dot_name(args.name)) if args.format == "dot" else embedding_to_dict(emb)
    g = entry_graph(args.name)
    return graph_to_dot(g, _dot_name(args.name)) if args.format == "dot" else graph_to_dict(g)


def _dot_name(name: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in name)


def cmd_unbounded_family(args, stdin) -> Dict[str, Any]:
    g = _load_graph(_read_json(args, stdin))
    member = unbounded_family(g, args.ell, per_gap=args.per_gap)
    profile = classify(member.embedding)
    return {
        "graph": graph_to_dict(member.graph),
        "embedding": embedding_to_dict(member.embedding),
        "chain": [list(step) for step in member.chain],
        "schedule": member.schedule.to_dict(),
        "claimed_lower_bound": member.claimed_lower_bound,
        "max_degree": member.graph.max_degree(),
        "ic": profile.ic,
    }


def cmd_generate(args, stdin) -> Dict[str, Any]:
    rng = random.Random(args.seed)
    if args.kind == "plane":
        emb = random_biconnected_plane(rng, args.n_max)
    else:
        emb = random_poppy_embedding(rng, args.n_max)
    return embedding_to_dict(emb)


# ---------- パーサ ----------

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="入力 JSON (省略時は stdin)")


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-seconds", type=float, help="経過時間の上限 (省略時は BASIS_BUDGET_SECONDS)")
    p.add_argument("--cap-dim", type=int, help="サイクル空間の次元の上限")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--workers", type=int, help="並列探索のプロセス数")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="basis-number", description="charge 付きサイクル基底の構成と検証")
    parser.add_argument("--verbose", action="store_true", help="DEBUG ログを出す")
    parser.add_argument("--seed", type=int, default=0, help="乱択の種")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="埋め込みの妥当性")
    _add_input(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="埋め込みの分類フラグ")
    _add_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="構成器で基底を作る")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--low-charge-edge", type=int, help="charge 1 以下にしたい辺 (full3 / poppy3)")
    _add_input(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-kbasis", help="k-基底かどうか")
    p.add_argument("-k", type=int, required=True)
    _add_input(p)
    p.set_defaults(func=cmd_verify_kbasis)

    p = sub.add_parser("transform", help="基底を運ぶ辺の操作")
    p.add_argument("op", choices=["contract", "add-edge", "duplicate", "subdivide", "replace-edge"])
    p.add_argument("--edge", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--terminal", help="replace-edge の端子付きグラフ JSON ({graph, s, t})")
    p.add_argument("--mode", choices=MODES, default="exact")
    _add_input(p)
    _add_budget(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("basis-number", help="basis number の上下界と厳密値")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--by-blocks", action="store_true", help="ブロックごとに解く")
    p.add_argument("--entry", help="カタログのグラフを使う")
    p.add_argument("--store", action="store_true", help="証明書を DB に保存する")
    p.add_argument("--db", help="DB パス (省略時は .env の DB_PATH)")
    p.add_argument("--progress", action="store_true", help="並列探索の進捗を出す")
    _add_input(p)
    _add_budget(p)
    p.set_defaults(func=cmd_basis_number)

    p = sub.add_parser("catalog", help="既知グラフのカタログ")
    p.add_argument("action", choices=["list", "verify", "export"])
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--embedding", help="export する埋め込みのキー")
    p.add_argument("--no-exact", action="store_true", help="厳密計算を省く")
    _add_budget(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("unbounded-family", help="次数 3 の IC-平面グラフへの変換")
    p.add_argument("--ell", type=int, help="元のグラフの basis number の下界 (記録のみ)")
    p.add_argument("--per-gap", type=int, default=2)
    _add_input(p)
    p.set_defaults(func=cmd_unbounded_family)

    p = sub.add_parser("generate", help="乱択の埋め込み (--seed で固定)")
    p.add_argument("--kind", choices=["plane", "poppy"], default="poppy")
    p.add_argument("--n-max", type=int, default=20)
    p.set_defaults(func=cmd_generate)
    return parser


def _emit(out: TextIO, payload: Any) -> None:
    out.write(payload if isinstance(payload, str) else dumps(payload) + "\n")


def run(argv: Optional[List[str]] = None, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Args:
        argv: 引数 (省略時は sys.argv[1:])
        stdin / stdout: テストから差し替える

    Returns:
        終了コード
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(logging.DEBUG if args.verbose else logging.INFO)
    random.seed(args.seed)

    try:
        _emit(stdout, args.func(args, stdin))
        return EXIT_OK
    except CommandError as e:
        _emit(stdout, e.payload)
        return e.code
    except (BudgetExceeded, CapExceeded) as e:
        payload = {"error": str(e)}
        if isinstance(e, BudgetExceeded):
            payload.update({"lower": e.lower, "upper": e.upper})
        logger.error(f"budget exceeded: {e}")
        _emit(stdout, payload)
        return EXIT_BUDGET
    except (BasisNumberError, json.JSONDecodeError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        _emit(stdout, {"error": str(e)})
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
