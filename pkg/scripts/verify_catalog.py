"""
カタログの全エントリを検証し、pandas の表で結果を出す。失敗があれば終了コード 1。

使い方:
  python scripts/verify_catalog.py
  python scripts/verify_catalog.py --no-exact           # 厳密計算を省く
  python scripts/verify_catalog.py --names K6 Petersen --csv out/catalog.csv
  python scripts/verify_catalog.py --store              # 厳密計算の証明書を DB に保存
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from tqdm import tqdm

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.catalog.registry import entry_graph, list_entries  # noqa: E402
from src.catalog.verify import summary_frame, verify_entry  # noqa: E402
from src.config import load_config  # noqa: E402
from src.data_loader import search_defaults  # noqa: E402
from src.db.client import CertificateStore  # noqa: E402
from src.errors import BasisNumberError  # noqa: E402
from src.graph.multigraph import betti  # noqa: E402
from src.search.budget import SearchBudget  # noqa: E402
from src.search.exact import exact_basis_number  # noqa: E402

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger("VerifyCatalog")


def _store_certificates(names, budget: SearchBudget, db_path: str) -> int:
    limit = search_defaults()["catalog"]["exact_max_betti"]
    stored = 0
    os.makedirs(os.path.dirname(db_path) or ".", exist_ok=True)
    with CertificateStore(db_path) as store:
        for name in names:
            g = entry_graph(name)
            if betti(g) > limit:
                continue
            try:
                cert = exact_basis_number(g, budget)
            except BasisNumberError as e:
                logger.warning(f"{name}: no certificate ({e})")
                continue
            store.add(g, cert, name=name)
            stored += 1
    return stored


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--names", nargs="*", help="対象のエントリ (省略時は全部)")
    ap.add_argument("--no-exact", action="store_true")
    ap.add_argument("--budget-seconds", type=float)
    ap.add_argument("--csv", help="結果の表を CSV にも書く")
    ap.add_argument("--store", action="store_true", help="厳密計算の証明書を DB に保存")
    ap.add_argument("--db", help="DB パス (省略時は .env の DB_PATH)")
    args = ap.parse_args()

    names = args.names or [e.name for e in list_entries()]
    budget = SearchBudget.from_env(seconds=args.budget_seconds)

    reports = []
    for name in tqdm(names, desc="catalog"):
        try:
            reports.append(verify_entry(name, budget, run_exact=not args.no_exact))
        except BasisNumberError as e:
            logger.error(f"{name}: {e}")
            sys.exit(2)

    df = summary_frame(reports)
    print(df.to_string(index=False))
    for r in reports:
        for note in r.notes:
            print(f"[NOTE] {r.name}: {note}")
        for failure in r.failures:
            print(f"[FAIL] {r.name}: {failure}")

    if args.csv:
        os.makedirs(os.path.dirname(args.csv) or ".", exist_ok=True)
        df.to_csv(args.csv, index=False)
        print(f"[OK] summary -> {args.csv}")
    if args.store and not args.no_exact:
        db_path = args.db or load_config()["db_path"]
        n = _store_certificates(names, budget, db_path)
        print(f"[OK] {n} certificates -> {db_path}")

    sys.exit(0 if all(r.passed for r in reports) else 1)


if __name__ == "__main__":
    main()
