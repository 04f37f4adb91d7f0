from sqlalchemy import Column, String, Float, Integer, Text, DateTime, Index, create_engine, func
from sqlalchemy.orm import declarative_base, sessionmaker

Base = declarative_base()

class BasisCertificateRecord(Base):
    """
    basis number の証明書を 1 行ずつ保存するテーブルモデル。
    同じグラフ (fingerprint) に複数の証明書が積まれてよい。参照時は最新を使う。
    """
    __tablename__ = 'basis_certificates'

    id = Column(Integer, primary_key=True, autoincrement=True)

    # グラフの識別子
    fingerprint = Column(String(64), nullable=False, comment="グラフ JSON の sha256")
    name = Column(String(255), comment="カタログ名など (任意)")
    n = Column(Integer, comment="頂点数")
    m = Column(Integer, comment="辺数")
    betti = Column(Integer, comment="サイクル空間の次元")

    # 証明書の中身
    value = Column(Integer, nullable=False, comment="basis number")
    lower_bound_reason = Column(String(16), nullable=False, comment="counting / exhaustion")
    exhaustive = Column(Integer, default=1, comment="1: k-1 の探索が完了している")
    counting_bound = Column(Integer, comment="数え上げの下界")
    witness_json = Column(Text, comment="証拠の k-基底 (辺 ID のリストのリスト)")
    nodes = Column(Integer, comment="展開したノード数")
    elapsed_seconds = Column(Float, comment="探索時間")
    created_at = Column(DateTime, server_default=func.now())

    __table_args__ = (
        Index('idx_basis_cert_fingerprint', 'fingerprint'),
        Index('idx_basis_cert_name', 'name'),
    )

    def __repr__(self):
        return f"<BasisCertificateRecord(name={self.name}, n={self.n}, m={self.m}, value={self.value})>"

def init_db(db_path: str):
    """
    データベースとテーブルを初期化する。

    Args:
        db_path (str): SQLiteデータベースファイルへのパス
    """
    engine = create_engine(f'sqlite:///{db_path}', echo=False)
    Base.metadata.create_all(engine)
    return engine

def get_session(db_path: str):
    """
    セッションファクトリを返すヘルパー関数
    """
    engine = create_engine(f'sqlite:///{db_path}', echo=False)
    Session = sessionmaker(bind=engine)
    return Session()
