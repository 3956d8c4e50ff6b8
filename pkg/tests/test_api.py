import base64

import pytest
from fastapi.testclient import TestClient

from hogdb import codecs, seeds
from hogdb.api import create_app
from hogdb.jobs import attach
from hogdb.store import Store


@pytest.fixture
def service():
    store = Store()
    queue = attach(store)
    app = create_app(store, queue, workers=0)
    client = TestClient(app)
    return client, store, queue


def register(client, login):
    resp = client.post("/api/users/register", json={"login": login})
    assert resp.status_code == 200
    return {"Authorization": f"Bearer {resp.json()['token']}"}


def err_code(resp):
    body = resp.json()
    assert set(body) == {"error"}
    return body["error"]["code"]


class TestRegister:
    def test_token_authenticates_submission(self, service):
        client, store, _ = service
        auth = register(client, "alice")
        resp = client.post("/api/graphs",
                           json={"format": "graph6", "payload": "Bw"},
                           headers=auth)
        assert resp.status_code == 200
        assert resp.json() == {"id": 1, "created": True}

    def test_duplicate_login(self, service):
        client, _, _ = service
        register(client, "alice")
        resp = client.post("/api/users/register", json={"login": "alice"})
        assert resp.status_code == 400
        assert err_code(resp) == "BAD_QUERY"

    def test_missing_token(self, service):
        client, _, _ = service
        resp = client.post("/api/graphs",
                           json={"format": "graph6", "payload": "Bw"})
        assert resp.status_code == 401
        assert err_code(resp) == "UNAUTHENTICATED"

    def test_bad_token(self, service):
        client, _, _ = service
        resp = client.post("/api/graphs",
                           json={"format": "graph6", "payload": "Bw"},
                           headers={"Authorization": "Bearer nope"})
        assert resp.status_code == 401


class TestSubmit:
    def test_graph6_submission_stores_k3(self, service):
        client, store, _ = service
        auth = register(client, "alice")
        client.post("/api/graphs", json={"format": "graph6", "payload": "Bw"},
                    headers=auth)
        assert store.get(1).graph == codecs.decode_graph6("Bw")

    def test_resubmit_permuted_as_edge_text(self, service):
        client, _, _ = service
        auth = register(client, "alice")
        client.post("/api/graphs", json={"format": "graph6", "payload": "Bw"},
                    headers=auth)
        resp = client.post("/api/graphs",
                           json={"format": "edge-text",
                                 "payload": "n=3\n2 3\n3 1\n1 2\n"},
                           headers=auth)
        assert resp.json() == {"id": 1, "created": False}

    def test_multicode_base64(self, service):
        client, store, _ = service
        auth = register(client, "alice")
        payload = base64.b64encode(bytes([3, 2, 3, 0, 3, 0])).decode()
        resp = client.post("/api/graphs",
                           json={"format": "multicode", "payload": payload},
                           headers=auth)
        assert resp.json()["created"] is True
        assert store.get(resp.json()["id"]).graph.m == 3

    def test_garbage_payload(self, service):
        client, _, _ = service
        auth = register(client, "alice")
        resp = client.post("/api/graphs",
                           json={"format": "graph6", "payload": "B\x01w"},
                           headers=auth)
        assert resp.status_code == 400
        assert err_code(resp) == "BAD_FORMAT"

    def test_two_graphs_rejected(self, service):
        client, _, _ = service
        auth = register(client, "alice")
        resp = client.post("/api/graphs",
                           json={"format": "graph6", "payload": "Bw\n@"},
                           headers=auth)
        assert err_code(resp) == "BAD_FORMAT"

    def test_drawn_submission_keeps_coordinates(self, service):
        client, store, _ = service
        auth = register(client, "alice")
        payload = {"vertices": [[0, 0], [100, 0], [50, 80]],
                   "edges": [[0, 1], [1, 2], [0, 2]]}
        resp = client.post("/api/graphs",
                           json={"format": "drawn", "payload": payload,
                                 "name": "drawn triangle"},
                           headers=auth)
        rid = resp.json()["id"]
        rec = store.get(rid)
        assert sorted(rec.embedding) == [(0.0, 0.0), (50.0, 80.0), (100.0, 0.0)]

    def test_drawn_duplicate_detected(self, service):
        client, _, _ = service
        auth = register(client, "alice")
        client.post("/api/graphs", json={"format": "graph6", "payload": "Bw"},
                    headers=auth)
        payload = {"vertices": [[0, 0], [1, 0], [0, 1]],
                   "edges": [[2, 0], [0, 1], [1, 2]]}
        resp = client.post("/api/graphs",
                           json={"format": "drawn", "payload": payload},
                           headers=auth)
        assert resp.json() == {"id": 1, "created": False}

    def test_drawn_self_loop_rejected(self, service):
        client, _, _ = service
        auth = register(client, "alice")
        payload = {"vertices": [[0, 0]], "edges": [[0, 0]]}
        resp = client.post("/api/graphs",
                           json={"format": "drawn", "payload": payload},
                           headers=auth)
        assert err_code(resp) == "BAD_FORMAT"


class TestRecordView:
    def test_full_view_fields(self, service):
        client, store, queue = service
        auth = register(client, "alice")
        rid = client.post("/api/graphs",
                          json={"format": "graph6",
                                "payload": codecs.encode_graph6(seeds.heawood()),
                                "name": "Heawood graph",
                                "interesting_for": ["girth"]},
                          headers=auth).json()["id"]
        queue.drain()
        body = client.get(f"/api/graphs/{rid}").json()
        assert body["name"] == "Heawood graph"
        assert body["owner"] == "alice"
        assert body["interesting_for"] == ["girth"]
        assert body["invariants"]["girth"] == {
            "status": "COMPUTED", "kind": "RATIONAL", "num": 6, "den": 1}
        assert len(body["embedding"]) == 14

    def test_fresh_submission_has_pending(self, service):
        client, _, _ = service
        auth = register(client, "alice")
        rid = client.post("/api/graphs",
                          json={"format": "graph6", "payload": "Bw"},
                          headers=auth).json()["id"]
        body = client.get(f"/api/graphs/{rid}").json()
        assert any(v == {"status": "PENDING"}
                   for v in body["invariants"].values())

    def test_missing_id(self, service):
        client, _, _ = service
        resp = client.get("/api/graphs/404")
        assert resp.status_code == 404
        assert err_code(resp) == "NOT_FOUND"


class TestMetadataAndComments:
    def test_non_owner_patch_rejected(self, service):
        client, _, _ = service
        alice = register(client, "alice")
        bob = register(client, "bob")
        rid = client.post("/api/graphs",
                          json={"format": "graph6", "payload": "Bw"},
                          headers=alice).json()["id"]
        resp = client.patch(f"/api/graphs/{rid}", json={"name": "stolen"},
                            headers=bob)
        assert resp.status_code == 403
        assert err_code(resp) == "NOT_OWNER"

    def test_owner_patch(self, service):
        client, _, _ = service
        alice = register(client, "alice")
        rid = client.post("/api/graphs",
                          json={"format": "graph6", "payload": "Bw"},
                          headers=alice).json()["id"]
        resp = client.patch(f"/api/graphs/{rid}",
                            json={"name": "triangle", "interesting_for": ["chi"]},
                            headers=alice)
        assert resp.json()["name"] == "triangle"

    def test_comment_visible_in_get(self, service):
        client, _, _ = service
        alice = register(client, "alice")
        bob = register(client, "bob")
        rid = client.post("/api/graphs",
                          json={"format": "graph6", "payload": "Bw"},
                          headers=alice).json()["id"]
        client.post(f"/api/graphs/{rid}/comments",
                    json={"text": "complete tripartite too"}, headers=bob)
        body = client.get(f"/api/graphs/{rid}").json()
        assert body["comments"][0]["user"] == "bob"
        assert "tripartite" in body["comments"][0]["text"]


class TestRegistryAndJobs:
    def test_invariants_lists_seventeen(self, service):
        client, _, _ = service
        body = client.get("/api/invariants").json()
        assert len(body) == 17
        assert {"id": "girth", "display": "girth", "kind": "RATIONAL",
                "cost": "POLY"} in body

    def test_jobs_counts(self, service):
        client, _, queue = service
        auth = register(client, "alice")
        client.post("/api/graphs", json={"format": "graph6", "payload": "Bw"},
                    headers=auth)
        body = client.get("/api/jobs").json()
        assert body["QUEUED"] == 17
        queue.drain()
        body = client.get("/api/jobs").json()
        assert body["QUEUED"] == 0 and body["DONE"] == 17


class TestSearch:
    @pytest.fixture
    def seeded_service(self):
        store = Store()
        queue = attach(store)
        seeds.load_seed_catalog(store)
        queue.drain()
        app = create_app(store, queue, workers=0)
        return TestClient(app), store

    def test_heawood_chain(self, seeded_service):
        client, _ = seeded_service
        steps = [
            {"kind": "range", "invariant": "girth", "low": 6, "high": 6},
            {"kind": "bool", "invariant": "regular", "value": True},
            {"kind": "range", "invariant": "avgdeg",
             "low": {"num": 3, "den": 1}, "high": {"num": 3, "den": 1}},
            {"kind": "range", "invariant": "n", "low": 14, "high": 14},
        ]
        body = client.post("/api/search", json={"steps": steps}).json()
        assert body["total"] == 1
        assert body["results"][0]["name"] == "Heawood graph"

    def test_download_format_streams_graph6(self, seeded_service):
        client, _ = seeded_service
        resp = client.post("/api/search",
                           json={"steps": [{"kind": "keyword", "text": "Heawood"}],
                                 "format": "graph6"})
        assert resp.headers["content-type"].startswith("text/plain")
        lines = resp.text.strip().splitlines()
        assert len(lines) == 1
        from hogdb.graphs import is_isomorphic
        assert is_isomorphic(codecs.decode_graph6(lines[0]), seeds.heawood())

    def test_multicode_download_reimports(self, seeded_service):
        client, store = seeded_service
        resp = client.post("/api/search", json={"steps": [], "format": "multicode"})
        graphs = codecs.decode_multicode(resp.content)
        assert len(graphs) == len(store)

    def test_invalid_invariant_name(self, seeded_service):
        client, _ = seeded_service
        resp = client.post("/api/search", json={
            "steps": [{"kind": "range", "invariant": "nope", "low": 1, "high": 2}]})
        assert resp.status_code == 400
        assert err_code(resp) == "BAD_QUERY"

    def test_expression_step(self, seeded_service):
        client, _ = seeded_service
        body = client.post("/api/search", json={
            "steps": [{"kind": "expr", "text": "mu <= n/2 - 2"}]}).json()
        names = {r["name"] for r in body["results"]}
        assert "Heawood graph" not in names

    def test_bad_expression_offset(self, seeded_service):
        client, _ = seeded_service
        resp = client.post("/api/search", json={
            "steps": [{"kind": "expr", "text": "chi <"}]})
        assert resp.status_code == 400
        assert resp.json()["error"]["offset"] == 6

    def test_paging(self, seeded_service):
        client, store = seeded_service
        body = client.post("/api/search", json={
            "steps": [], "page": {"offset": 0, "limit": 5}}).json()
        assert body["total"] == len(store)
        assert len(body["results"]) == 5

    def test_exact_step_by_graph6(self, seeded_service):
        client, _ = seeded_service
        line = codecs.encode_graph6(seeds.kneser_5_2())
        body = client.post("/api/search", json={
            "steps": [{"kind": "exact", "graph6": line}]}).json()
        assert body["total"] == 1
        assert body["results"][0]["name"] == "Petersen graph"


class TestDownloadEndpoint:
    def test_single_graph_readable(self, service):
        client, store, queue = service
        auth = register(client, "alice")
        rid = client.post("/api/graphs",
                          json={"format": "graph6",
                                "payload": codecs.encode_graph6(seeds.heawood()),
                                "name": "hw"},
                          headers=auth).json()["id"]
        queue.drain()
        resp = client.get(f"/api/graphs/{rid}/download",
                          params={"format": "readable"})
        assert "girth = 6" in resp.text

    def test_unknown_format(self, service):
        client, store, _ = service
        auth = register(client, "alice")
        rid = client.post("/api/graphs",
                          json={"format": "graph6", "payload": "Bw"},
                          headers=auth).json()["id"]
        resp = client.get(f"/api/graphs/{rid}/download", params={"format": "pdf"})
        assert err_code(resp) == "BAD_QUERY"
