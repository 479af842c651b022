import pytest

fastapi = pytest.importorskip("fastapi")
from fastapi.testclient import TestClient

from attripart.dataio import DatasetBundle, default_labels
from attripart.graphs import AttributeStore, StructureGraph
from attripart.service import GraphSession, create_app

from conftest import make_clique_edges


@pytest.fixture(scope="module")
def client():
    edges = make_clique_edges(0, 6) + make_clique_edges(6, 6) + make_clique_edges(12, 6)
    G = StructureGraph.from_edges(18, edges)
    X = AttributeStore.from_token_sets([[f"b{v // 6}", "common"] for v in range(18)])
    bundle = DatasetBundle(name="cliques", graph=G, attributes=X,
                           labels=default_labels(18))
    app = create_app({"cliques": GraphSession.from_bundle("cliques", bundle)})
    return TestClient(app)


def test_list_graphs(client):
    doc = client.get("/graphs").json()
    assert doc == [{"id": "cliques", "name": "cliques", "n": 18, "m": 45}]


def test_node_info(client):
    doc = client.get("/graphs/cliques/node", params={"label": "n3"}).json()
    assert doc["degree"] == 5
    assert doc["tokens"] == ["b0", "common"]


def test_unknown_graph_404(client):
    r = client.get("/graphs/nope/node", params={"label": "n3"})
    assert r.status_code == 404


def test_unknown_seed_422(client):
    r = client.post("/graphs/cliques/partition", json={"seed": "ghost"})
    assert r.status_code == 422
    assert r.json()["detail"]["stage"] == "seed-lookup"


def test_partition_returns_seed_clique(client):
    r = client.post("/graphs/cliques/partition", json={"seed": "n0", "rng": 5})
    assert r.status_code == 200
    doc = r.json()
    assert sorted(doc["result"]["members"]) == [f"n{i}" for i in range(6)]
    assert doc["resolved_params"]["rng"] == 5
    assert doc["resolved_params"]["phi"] == 0.2


def test_forecast_degenerate_matches_partition(client):
    a = client.post("/graphs/cliques/partition", json={"seed": "n6", "rng": 9}).json()
    b = client.post("/graphs/cliques/forecast",
                    json={"seed": "n6", "rng": 9, "te": 1.0}).json()
    assert a["result"]["members"] == b["result"]["members"]
    assert b["predicted_edges"] == []
    assert b["result"]["predicted"] is True


def test_forecast_reports_predicted_edges():
    # a clique missing one edge: the gap is similar enough to be predicted
    edges = [e for e in make_clique_edges(0, 6) if e != (0, 1)]
    edges += make_clique_edges(6, 6) + make_clique_edges(12, 6)
    G = StructureGraph.from_edges(18, edges)
    X = AttributeStore.from_token_sets([[f"b{v // 6}"] for v in range(18)])
    bundle = DatasetBundle(name="gap", graph=G, attributes=X,
                           labels=default_labels(18))
    app = create_app({"gap": GraphSession.from_bundle("gap", bundle)})
    local = TestClient(app)
    r = local.post("/graphs/gap/forecast",
                   json={"seed": "n2", "rng": 9, "te": 0.5}).json()
    pairs = {(e["source_label"], e["target_label"]) for e in r["predicted_edges"]}
    assert ("n0", "n1") in pairs
    for e in r["predicted_edges"]:
        assert e["weight"] > 0.5


def test_proximity_payload_self_consistent(client):
    doc = client.post("/graphs/cliques/proximity", json={"seed": "n2", "rng": 4}).json()
    ids = {n["id"] for n in doc["subgraph"]["nodes"]}
    assert len(ids) == doc["p"]
    for e in doc["subgraph"]["edges"]:
        assert e["source"] in ids and e["target"] in ids
    assert doc["subgraph"]["truncated"] is False


def test_identical_requests_identical_bodies(client):
    body = {"seed": "n0", "rng": 11, "nw": 5000}
    a = client.post("/graphs/cliques/partition", json=body).json()
    b = client.post("/graphs/cliques/partition", json=body).json()
    a["result"].pop("timings_ms")
    b["result"].pop("timings_ms")
    assert a == b


def test_member_flags_in_render_payload(client):
    doc = client.post("/graphs/cliques/partition", json={"seed": "n0", "rng": 5}).json()
    members = set(doc["result"]["members"])
    for node in doc["subgraph"]["nodes"]:
        assert node["member"] == (node["label"] in members)


def test_invalid_parameter_rejected(client):
    r = client.post("/graphs/cliques/partition", json={"seed": "n0", "phi": 2.0})
    assert r.status_code == 422
