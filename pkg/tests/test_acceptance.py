"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with output visible to see the per-criterion report:

    pytest tests/test_acceptance.py -v -s
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from hogdb import codecs, seeds
from hogdb.covering import Conglomerate, greedy_representatives, verify_cover
from hogdb.exprlang import TriBool, evaluate, parse_expression
from hogdb.graphs import Graph, graph_from_edges, is_isomorphic
from hogdb.invariants import PENDING, Kind, Status, compute
from hogdb.jobs import Job, JobState, attach
from hogdb.query import (BooleanIs, ExprSatisfy, Keyword, Polarity, Query,
                         Range, apply_restriction, run_query)
from hogdb.smallgraphs import (all_labeled_graphs, class_representatives,
                               is_connected_rows, labeled_graph_count)
from hogdb.store import Store

import oracles
from conftest import random_graph

LABELED_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}
CONNECTED_CLASS_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


@contextmanager
def criterion(name, limit=None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL ({time.perf_counter() - start:.1f}s)")
        raise
    elapsed = time.perf_counter() - start
    note = f" [limit {limit:.0f}s]" if limit else ""
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.1f}s{note})")
    if limit is not None:
        assert elapsed < limit, f"{name} exceeded its {limit}s budget"


def fresh_store():
    s = Store()
    s.register_user("acceptance")
    return s


@pytest.fixture(scope="module")
def seeded():
    """Seed catalog with the queue drained, shared by read-only criteria."""
    store = Store()
    queue = attach(store)
    seeds.load_seed_catalog(store)
    queue.drain()
    return store


class TestDedupCanonical:
    def test_all_labeled_graphs_n1_to_6(self):
        with criterion("dedup: labeled import n=1..6", limit=120):
            store = fresh_store()
            for n in range(1, 7):
                for g in all_labeled_graphs(n):
                    store.insert_graph(g, user="acceptance")
                count = sum(1 for r in store.records() if r.graph.n == n)
                assert count == LABELED_CLASS_COUNTS[n], (n, count)
            assert len(store) == sum(LABELED_CLASS_COUNTS[n] for n in range(1, 7))

    def test_connected_import_n1_to_7(self):
        with criterion("dedup: connected import n=1..7"):
            store = fresh_store()
            insert = store.insert_graph
            from hogdb import _bits
            for n in range(1, 8):
                for code in range(labeled_graph_count(n)):
                    rows = _bits.rows_from_code(n, code)
                    if not is_connected_rows(n, rows):
                        continue
                    insert(Graph(n, rows), user="acceptance")
                count = sum(1 for r in store.records() if r.graph.n == n)
                assert count == CONNECTED_CLASS_COUNTS[n], (n, count)

    def test_enumerator_cross_check(self):
        with criterion("dedup: enumerator matches the labeled import"):
            reps = class_representatives(7)
            assert len(reps) == LABELED_CLASS_COUNTS[7]
            connected = [g for g in reps if is_connected_rows(g.n, g.rows)]
            assert len(connected) == CONNECTED_CLASS_COUNTS[7]


class TestHeawoodSearch:
    def test_restriction_chain_and_keywords(self, seeded):
        with criterion("search: girth=6 -> regular -> avgdeg=3 -> n=14", limit=5):
            chain = Query(steps=[Range("girth", F(6), F(6)),
                                 BooleanIs("regular", True),
                                 Range("avgdeg", F(3), F(3)),
                                 Range("n", F(14), F(14))])
            records, total = run_query(seeded, chain)
            assert total == 1
            assert is_isomorphic(records[0].graph, seeds.heawood())
            rid = records[0].id
            for kw in ("Heawood", "(3,6)-cage"):
                hits, t = run_query(seeded, Query(steps=[Keyword(kw)]))
                assert t == 1 and hits[0].id == rid, kw


class TestCodecRoundTrips:
    def test_round_trips_and_pinned_vectors(self):
        with criterion("codecs: round-trips and pinned vectors", limit=30):
            k1 = graph_from_edges(1, [])
            k2 = graph_from_edges(2, [(0, 1)])
            k3 = graph_from_edges(3, [(0, 1), (0, 2), (1, 2)])
            assert codecs.encode_graph6(k1) == "@"
            assert codecs.encode_graph6(k2) == "A_"
            assert codecs.encode_graph6(k3) == "Bw"
            assert codecs.decode_graph6("@") == k1
            assert codecs.decode_graph6("A_") == k2
            assert codecs.decode_graph6("Bw") == k3
            assert codecs.encode_multicode(k3) == bytes([3, 2, 3, 0, 3, 0])
            assert codecs.decode_multicode(bytes([3, 2, 3, 0, 3, 0])) == [k3]

            rng = random.Random(0xACCE97)
            for _ in range(1000):
                g = random_graph(rng, rng.randint(0, 50))
                assert codecs.decode_graph6(codecs.encode_graph6(g)) == g
                assert codecs.parse_edge_text(codecs.write_edge_text(g)) == g
            for _ in range(200):
                g = random_graph(rng, rng.randint(1, 255))
                assert codecs.decode_multicode(codecs.encode_multicode(g)) == [g]


class TestInvariantOracles:
    def test_all_classes_up_to_7_vertices(self):
        with criterion("invariants: oracle sweep over all classes n<=7",
                       limit=600):
            reps = [g for n in range(1, 8) for g in class_representatives(n)]
            assert len(reps) == sum(LABELED_CLASS_COUNTS.values())
            for g in reps:
                values = self._check_one(g)
                self._cross_checks(g, values)

    @staticmethod
    def _check_one(g):
        values = {inv: compute(g, inv, 60.0) for inv in
                  ("n", "m", "mindeg", "maxdeg", "avgdeg", "regular",
                   "bipartite", "connected", "components", "girth",
                   "diameter", "radius", "chi", "omega", "alpha", "mu",
                   "triangle_free")}
        degs = [len(g.neighbors(v)) for v in range(g.n)]
        edge_count = len(g.edges())
        assert values["n"].value == g.n
        assert values["m"].value == edge_count
        assert values["mindeg"].value == min(degs)
        assert values["maxdeg"].value == max(degs)
        assert values["avgdeg"].value == F(2 * edge_count, g.n)
        assert values["regular"].value == (min(degs) == max(degs))
        assert values["bipartite"].value == oracles.bipartite_oracle(g)
        assert values["connected"].value == (oracles.components_oracle(g) == 1)
        assert values["components"].value == oracles.components_oracle(g)
        assert values["triangle_free"].value == oracles.triangle_free_oracle(g)
        assert values["omega"].value == oracles.clique_oracle(g)
        assert values["alpha"].value == oracles.independence_oracle(g)
        assert values["chi"].value == oracles.chromatic_oracle(g)
        assert values["mu"].value == oracles.matching_oracle(g)
        girth = oracles.girth_oracle(g)
        if girth is None:
            assert values["girth"].kind is Kind.UNDEFINED
        else:
            assert values["girth"].value == girth
        dr = oracles.diameter_radius_oracle(g)
        if dr is None:
            assert values["diameter"].kind is Kind.UNDEFINED
            assert values["radius"].kind is Kind.UNDEFINED
        else:
            assert (values["diameter"].value, values["radius"].value) == dr
        return values

    @staticmethod
    def _cross_checks(g, values):
        assert values["omega"].value <= values["chi"].value
        assert values["mu"].value <= F(g.n, 2)
        if values["bipartite"].value:
            assert values["triangle_free"].value
        if values["regular"].value:
            assert values["mindeg"].value == values["maxdeg"].value


class TestExpressionFilter:
    def test_heawood_and_pending_and_partitions(self, seeded):
        with criterion("expressions: Kleene filtering"):
            expr = parse_expression("mu <= n/2 - 2")
            hw = next(r for r in seeded.records() if r.name == "Heawood graph")
            assert hw.invariant_values["mu"].value == \
                oracles.matching_oracle(seeds.heawood()) == 7
            assert evaluate(expr, hw.invariant_values) is TriBool.FALSE

            pending = dict(hw.invariant_values)
            pending["mu"] = PENDING
            assert evaluate(expr, pending) is TriBool.UNKNOWN

            everything = set(seeded.ids())
            sat = apply_restriction(seeded, everything,
                                    ExprSatisfy(expr, Polarity.SATISFY))
            unsat = apply_restriction(seeded, everything,
                                      ExprSatisfy(expr, Polarity.NOT_SATISFY))
            assert not (sat & unsat)
            assert hw.id in unsat


class TestGreedyCover:
    def test_pinned_examples(self):
        with criterion("cover: pinned examples"):
            keys = {i: f"key{i}" for i in (1, 2, 3)}
            reps, assign = greedy_representatives(
                [Conglomerate("A", frozenset({1})),
                 Conglomerate("B", frozenset({2}))], keys)
            assert reps == {1, 2}

            reps, assign = greedy_representatives(
                [Conglomerate("A", frozenset({1, 2})),
                 Conglomerate("B", frozenset({2, 3}))], keys)
            assert reps == {2}

            cs = [Conglomerate("A", frozenset({1, 2})),
                  Conglomerate("B", frozenset({1, 3})),
                  Conglomerate("C", frozenset({2, 3}))]
            reps, assign = greedy_representatives(cs, keys)
            assert len(reps) == 2 and reps == {1, 2}
            assert oracles.set_cover_optimum(
                {"A", "B", "C"},
                {1: {"A", "B"}, 2: {"A", "C"}, 3: {"B", "C"}}) == 2

    def test_random_instances_feasible_within_harmonic_bound(self):
        with criterion("cover: 200 random instances vs exhaustive optimum"):
            rng = random.Random(0x5E7C0)
            for _ in range(200):
                n_graphs = rng.randint(1, 15)
                labels = [f"c{i}" for i in range(rng.randint(1, 12))]
                spec = {label: set(rng.sample(range(n_graphs),
                                              rng.randint(1, min(6, n_graphs))))
                        for label in labels}
                cs = [Conglomerate(l, frozenset(m)) for l, m in spec.items()]
                key_of = {i: f"key{i:03d}" for i in range(n_graphs)}
                reps, assign = greedy_representatives(cs, key_of)
                ok, missing = verify_cover(cs, reps)
                assert ok, missing
                membership = {}
                for label, members in spec.items():
                    for gid in members:
                        membership.setdefault(gid, set()).add(label)
                opt = oracles.set_cover_optimum(set(labels), membership)
                k = max(len(v) for v in membership.values())
                bound = sum(1 / i for i in range(1, k + 1)) * opt
                assert len(reps) <= bound + 1e-9, (len(reps), opt, k)


class TestQueueSemantics:
    def test_budgets_retry_and_priority(self):
        with criterion("queue: budgets, retry, POLY-first"):
            store = fresh_store()
            queue = attach(store)
            g = seeds.petersen()  # n = 10... use an n<=8 graph for retry
            small = graph_from_edges(8, [(i, (i + 1) % 8) for i in range(8)]
                                     + [(0, 4), (1, 5)])
            rid, _ = store.insert_graph(small, user="acceptance")

            # single worker: POLY jobs all complete before any EXP job
            order = []
            while True:
                job = queue.worker_step()
                if job is None:
                    break
                order.append(job.priority.value)
            first_exp = order.index("EXP")
            assert all(p == "POLY" for p in order[:first_exp])
            assert all(p == "EXP" for p in order[first_exp:])

            # 1 microsecond EXP budget records UNKNOWN
            store.set_invariant_value(rid, "chi", PENDING)
            with queue._lock:
                queue._push(Job(rid, "chi", 0.000001))
            job = queue.worker_step()
            assert job.state is JobState.TIMED_OUT
            assert store.get(rid).invariant_values["chi"].status is Status.UNKNOWN

            # retry at 60 s computes the oracle value
            queue.retry(rid, "chi", 60.0)
            queue.drain()
            value = store.get(rid).invariant_values["chi"]
            assert value.status is Status.COMPUTED
            assert value.value == oracles.chromatic_oracle(small)


class TestOwnershipComments:
    def test_api_ownership_and_comment_search(self):
        with criterion("ownership: NOT_OWNER patch, searchable comments"):
            from fastapi.testclient import TestClient
            from hogdb.api import create_app

            store = Store()
            queue = attach(store)
            client = TestClient(create_app(store, queue, workers=0))

            def register(login):
                token = client.post("/api/users/register",
                                    json={"login": login}).json()["token"]
                return {"Authorization": f"Bearer {token}"}

            alice = register("alice")
            bob = register("bob")
            rid = client.post(
                "/api/graphs",
                json={"format": "graph6",
                      "payload": codecs.encode_graph6(seeds.heawood()),
                      "name": "Heawood graph"},
                headers=alice).json()["id"]

            resp = client.patch(f"/api/graphs/{rid}", json={"name": "mine now"},
                                headers=bob)
            assert resp.status_code == 403
            assert resp.json()["error"]["code"] == "NOT_OWNER"
            assert store.get(rid).name == "Heawood graph"

            resp = client.post(f"/api/graphs/{rid}/comments",
                               json={"text": "this is the incidence graph of "
                                             "the fano plane"},
                               headers=bob)
            assert resp.status_code == 200

            body = client.post("/api/search", json={
                "steps": [{"kind": "keyword", "text": "fano"}]}).json()
            assert body["total"] == 1
            assert body["results"][0]["id"] == rid
