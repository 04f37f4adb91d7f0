import os
import tempfile

import networkx as nx
import pandas as pd

from src.db.client import CertificateStore
from src.db.schema import init_db
from src.graph.multigraph import Graph
from src.search.budget import SearchBudget
from src.search.certificate import fingerprint
from src.search.exact import exact_basis_number


def _cert(graph: Graph):
    return exact_basis_number(graph, SearchBudget(cap_dim=12))


def test_add_flush_and_lookup():
    k4 = Graph.from_networkx(nx.complete_graph(4))
    cert = _cert(k4)
    with tempfile.TemporaryDirectory() as tmp:
        db_path = os.path.join(tmp, "certs.db")
        with CertificateStore(db_path, batch_size=10) as store:
            store.add(k4, cert, name="K4")
            assert len(store.buffer) == 1
            found = store.lookup(k4)
            assert store.buffer == []
            assert found.value == 2
            assert found.witness == cert.witness
            assert store.lookup(fingerprint(k4)).value == 2
            assert store.lookup(Graph.from_networkx(nx.complete_graph(5))) is None


def test_latest_certificate_wins():
    c5 = Graph.from_networkx(nx.cycle_graph(5))
    cert = _cert(c5)
    with tempfile.TemporaryDirectory() as tmp:
        db_path = os.path.join(tmp, "certs.db")
        with CertificateStore(db_path, batch_size=1) as store:
            store.add(c5, cert)
            cert.notes.append("again")
            cert.nodes = 12345
            store.add(c5, cert)
            assert store.lookup(c5).nodes == 12345
        engine = init_db(db_path)
        df = pd.read_sql("SELECT fingerprint, value FROM basis_certificates", engine)
        engine.dispose()
        assert len(df) == 2 and set(df["value"]) == {1}


if __name__ == "__main__":
    test_add_flush_and_lookup()
    print("OK: add / lookup")
    test_latest_certificate_wins()
    print("OK: latest wins")
