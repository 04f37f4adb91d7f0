from typing import List, Dict, Any, Optional, Union
from sqlalchemy.orm import Session
from sqlalchemy.exc import SQLAlchemyError
import json
import logging

from src.db.schema import get_session, init_db, BasisCertificateRecord
from src.graph.multigraph import Graph, betti
from src.search.certificate import BasisNumberCertificate, fingerprint

logger = logging.getLogger(__name__)

class CertificateStore:
    """
    basis_certificates テーブルへの書き込みと参照を管理するクライアント。
    証明書をメモリバッファに保持し、一定量に達した時点で一括挿入を行う。
    """

    def __init__(self, db_path: str, batch_size: int = 100):
        """
        Args:
            db_path (str): SQLiteデータベースのパス (テーブルが無ければ作る)
            batch_size (int): 一括コミットする証明書数の閾値
        """
        init_db(db_path)
        self.session: Session = get_session(db_path)
        self.batch_size = batch_size
        self.buffer: List[Dict[str, Any]] = []

    def add(self, g: Graph, cert: BasisNumberCertificate, name: Optional[str] = None):
        """
        1件の証明書をバッファに追加する。

        Args:
            g (Graph): 証明書の対象グラフ
            cert (BasisNumberCertificate): 証明書 (証拠は保存前に検証しない)
            name (str, optional): カタログ名など
        """
        self.buffer.append({
            "fingerprint": fingerprint(g),
            "name": name,
            "n": g.n,
            "m": g.m,
            "betti": betti(g),
            "value": cert.value,
            "lower_bound_reason": cert.lower_bound_reason,
            "exhaustive": int(cert.exhaustive),
            "counting_bound": cert.counting_bound,
            "witness_json": json.dumps([s.ids() for s in cert.witness]),
            "nodes": cert.nodes,
            "elapsed_seconds": cert.elapsed,
        })
        if len(self.buffer) >= self.batch_size:
            self.flush()

    def flush(self):
        """
        バッファ内の証明書をデータベースに一括挿入し、コミットする。
        """
        if not self.buffer:
            return

        try:
            self.session.bulk_insert_mappings(BasisCertificateRecord, self.buffer)
            self.session.commit()
            logger.info(f"Flushed {len(self.buffer)} certificates to DB.")
            self.buffer.clear()
        except SQLAlchemyError as e:
            self.session.rollback()
            logger.error(f"Database error during flush: {e}")
            raise e

    def lookup(self, key: Union[Graph, str]) -> Optional[BasisNumberCertificate]:
        """
        グラフ (またはその fingerprint) の最新の証明書を返す。無ければ None。
        バッファは先にフラッシュする。
        """
        self.flush()
        fp = key if isinstance(key, str) else fingerprint(key)
        row = (
            self.session.query(BasisCertificateRecord)
            .filter(BasisCertificateRecord.fingerprint == fp)
            .order_by(BasisCertificateRecord.id.desc())
            .first()
        )
        if row is None:
            return None
        return BasisNumberCertificate.from_dict({
            "value": row.value,
            "witness": json.loads(row.witness_json or "[]"),
            "lower_bound_reason": row.lower_bound_reason,
            "exhaustive": bool(row.exhaustive),
            "counting_bound": row.counting_bound or 0,
            "nodes": row.nodes or 0,
        })

    def close(self):
        """
        残存データをフラッシュし、セッションをクローズする。
        """
        try:
            self.flush()
        finally:
            self.session.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
