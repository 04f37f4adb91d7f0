"""
証明書 DB (basis_certificates) のスキーマを作成するスクリプト。冪等。
--reset を付けると既存のテーブルを落としてから作り直す (列を足したあとなど)。

使い方:
  python scripts/init_db.py
  python scripts/init_db.py --db /abs/path/to.db --reset
"""

from __future__ import annotations

import argparse
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.config import load_config  # noqa: E402
from src.db.schema import BasisCertificateRecord, get_session, init_db  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--db", help="DB パス (省略時は .env の DB_PATH)")
    ap.add_argument("--reset", action="store_true", help="basis_certificates を作り直す (保存済みの証明書は消える)")
    args = ap.parse_args()

    db_path = args.db or load_config()["db_path"]
    os.makedirs(os.path.dirname(db_path) or ".", exist_ok=True)

    engine = init_db(db_path)
    if args.reset:
        BasisCertificateRecord.__table__.drop(engine)
        BasisCertificateRecord.__table__.create(engine)
        print(f"[OK] basis_certificates を作り直した -> {db_path}")

    session = get_session(db_path)
    try:
        rows = session.query(BasisCertificateRecord).count()
        graphs = session.query(BasisCertificateRecord.fingerprint).distinct().count()
    finally:
        session.close()
    print(f"[OK] basis_certificates -> {db_path} ({rows} 件, グラフ {graphs} 種)")


if __name__ == "__main__":
    main()
