"""
証明書 DB の状態確認ツール。basis_certificates を pandas で集計して出す。

使い方:
  python -m src.tools.inspect_certificates
  python -m src.tools.inspect_certificates --db /abs/path/to.db --name Petersen
"""

from __future__ import annotations

import argparse
import os
import sys

import pandas as pd
from sqlalchemy import create_engine

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../../")))

from src.config import load_config  # noqa: E402


def _print_section(title: str):
    bar = "=" * 60
    print(f"\n{bar}\n {title}\n{bar}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--db")
    ap.add_argument("--name", help="カタログ名で絞り込む")
    args = ap.parse_args()
    db = args.db or load_config()["db_path"]
    if not os.path.exists(db):
        print(f"DB not found: {db}")
        sys.exit(1)

    engine = create_engine(f"sqlite:///{db}")
    query = ("SELECT fingerprint, name, n, m, betti, value, lower_bound_reason, exhaustive, "
             "counting_bound, nodes, elapsed_seconds, created_at FROM basis_certificates")
    params = None
    if args.name:
        query += " WHERE name = ?"
        params = (args.name,)
    df = pd.read_sql(query, engine, params=params)

    _print_section(f"DB: {db}")
    print(f"  certificates: {len(df)}, graphs: {df['fingerprint'].nunique() if len(df) else 0}")
    if df.empty:
        return

    _print_section("basis number 別件数")
    print(df.groupby("value").size().rename("count").to_string())

    _print_section("下界の理由")
    print(df.groupby("lower_bound_reason").size().rename("count").to_string())

    _print_section("最新 20 件")
    latest = df.sort_values("created_at", ascending=False).head(20).copy()
    latest["fingerprint"] = latest["fingerprint"].str[:12]
    cols = ["name", "n", "m", "betti", "value", "lower_bound_reason", "nodes", "elapsed_seconds", "fingerprint"]
    print(latest[cols].to_string(index=False))

    _print_section("探索の重いグラフ Top 10 (ノード数)")
    heavy = df.sort_values("nodes", ascending=False).head(10)
    print(heavy[["name", "betti", "value", "nodes", "elapsed_seconds"]].to_string(index=False))


if __name__ == "__main__":
    main()
