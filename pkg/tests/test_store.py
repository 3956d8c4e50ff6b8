import json
import threading

import pytest

from hogdb import seeds
from hogdb.graphs import Permutation, graph_from_edges, permute
from hogdb.invariants import InvariantValue, Status
from hogdb.smallgraphs import all_labeled_graphs
from hogdb.store import (NotFoundError, NotOwnerError, Store, StoreError,
                         UnauthenticatedError, default_embedding,
                         record_to_doc)

from conftest import random_graph


class TestUsers:
    def test_register_and_authenticate(self, store):
        user, token = store.register_user("carol")
        assert store.authenticate(token).login == "carol"
        assert store.authenticate("bogus") is None

    def test_duplicate_login(self, store):
        with pytest.raises(StoreError, match="alice"):
            store.register_user("alice")

    def test_unknown_user_cannot_insert(self, store):
        with pytest.raises(UnauthenticatedError):
            store.insert_graph(seeds.complete(2), user="mallory")


class TestInsert:
    def test_first_insert(self, store):
        rid, created = store.insert_graph(seeds.complete(1), user="alice")
        assert (rid, created) == (1, True)

    def test_isomorphic_copy_dedups(self, store, rng):
        rid, _ = store.insert_graph(seeds.petersen(), user="alice",
                                    name="Petersen graph")
        p = list(range(10))
        rng.shuffle(p)
        relabeled = permute(seeds.petersen(), Permutation(tuple(p)))
        rid2, created = store.insert_graph(relabeled, user="bob", name="other")
        assert rid2 == rid and not created
        assert store.get(rid).name == "Petersen graph"  # metadata untouched

    def test_kneser_collides_with_petersen(self, store):
        rid, _ = store.insert_graph(seeds.petersen(), user="alice")
        rid2, created = store.insert_graph(seeds.kneser_5_2(), user="alice")
        assert rid2 == rid and not created

    def test_all_labeled_4_vertex_graphs_yield_11(self, store):
        for g in all_labeled_graphs(4):
            store.insert_graph(g, user="alice")
        assert len(store) == 11

    def test_pending_values_initialized(self, store):
        rid, _ = store.insert_graph(seeds.complete(3), user="alice")
        values = store.get(rid).invariant_values
        assert len(values) == 17
        assert all(v.status is Status.PENDING for v in values.values())

    def test_bad_interesting_for(self, store):
        with pytest.raises(StoreError, match="treewidth"):
            store.insert_graph(seeds.complete(3), user="alice",
                               interesting_for=["treewidth"])

    def test_bad_embedding_length(self, store):
        with pytest.raises(StoreError, match="2 points"):
            store.insert_graph(seeds.complete(3), user="alice",
                               embedding=[(0, 0), (1, 1)])

    def test_concurrent_identical_submissions(self, store):
        g = seeds.heawood()
        results = []

        def submit():
            results.append(store.insert_graph(g, user="alice"))

        threads = [threading.Thread(target=submit) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(store) == 1
        assert sum(1 for _, created in results if created) == 1


class TestEmbedding:
    def test_default_circular(self):
        emb = default_embedding(seeds.complete(1))
        assert emb == [(1.0, 0.0)]

    def test_c4_square_corners(self):
        emb = default_embedding(seeds.cycle(4))
        assert len(emb) == 4
        xs = sorted(round(x, 9) for x, _ in emb)
        assert xs == [-1.0, 0.0, 0.0, 1.0]

    def test_same_graph_two_labelings_same_coordinates(self, store, rng):
        g = seeds.cycle(7)
        rid, _ = store.insert_graph(g, user="alice")
        emb = store.get(rid).embedding
        s2 = Store()
        s2.register_user("alice")
        p = list(range(7))
        rng.shuffle(p)
        rid2, _ = s2.insert_graph(permute(g, Permutation(tuple(p))), user="alice")
        assert s2.get(rid2).embedding == emb

    def test_submitted_embedding_follows_canonical_relabeling(self, store):
        g = graph_from_edges(3, [(0, 1)])  # vertex 2 isolated
        coords = [(0.0, 0.0), (10.0, 0.0), (555.0, 5.0)]
        rid, _ = store.insert_graph(g, user="alice", embedding=coords)
        rec = store.get(rid)
        # isolated vertex keeps its drawn position, wherever it was relabeled
        iso = next(v for v in range(3) if rec.graph.degree(v) == 0)
        assert rec.embedding[iso] == (555.0, 5.0)


class TestOwnershipAndComments:
    def test_owner_renames(self, store):
        rid, _ = store.insert_graph(seeds.bull(), user="alice", name="x")
        rec = store.update_metadata(rid, {"name": "bull"}, "alice")
        assert rec.name == "bull"

    def test_non_owner_rejected(self, store):
        rid, _ = store.insert_graph(seeds.bull(), user="alice")
        with pytest.raises(NotOwnerError):
            store.update_metadata(rid, {"name": "hijack"}, "bob")

    def test_interesting_marks_visible(self, store):
        rid, _ = store.insert_graph(seeds.bull(), user="alice")
        rec = store.update_metadata(rid, {"interesting_for": ["mu"]}, "alice")
        assert rec.interesting_for == {"mu"}

    def test_unknown_field(self, store):
        rid, _ = store.insert_graph(seeds.bull(), user="alice")
        with pytest.raises(StoreError, match="owner"):
            store.update_metadata(rid, {"owner": "bob"}, "alice")

    def test_missing_record(self, store):
        with pytest.raises(NotFoundError):
            store.update_metadata(404, {"name": "x"}, "alice")

    def test_non_owner_comment_accepted(self, store):
        rid, _ = store.insert_graph(seeds.bull(), user="alice")
        rec = store.add_comment(rid, "has a nice horn structure", "bob")
        assert rec.comments[0].user == "bob"

    def test_empty_comment_rejected(self, store):
        rid, _ = store.insert_graph(seeds.bull(), user="alice")
        with pytest.raises(StoreError, match="empty"):
            store.add_comment(rid, "   ", "bob")

    def test_comment_on_missing_graph(self, store):
        with pytest.raises(NotFoundError):
            store.add_comment(404, "hello", "bob")


class TestLookup:
    def test_lookup_stored(self, store):
        from hogdb.graphs import canonical_key
        rid, _ = store.insert_graph(seeds.petersen(), user="alice")
        rec = store.lookup_by_canonical(canonical_key(seeds.petersen()))
        assert rec is not None and rec.id == rid

    def test_lookup_missing(self, store, rng):
        from hogdb.graphs import canonical_key
        assert store.lookup_by_canonical(canonical_key(random_graph(rng, 9))) is None

    def test_drawn_and_file_paths_agree(self, store, rng):
        from hogdb.graphs import canonical_key
        g = random_graph(rng, 7)
        p = list(range(7))
        rng.shuffle(p)
        h = permute(g, Permutation(tuple(p)))
        assert canonical_key(g) == canonical_key(h)


class TestPersistence:
    def test_reload_round_trip(self, tmp_path, rng):
        s = Store(tmp_path / "db")
        s.register_user("alice")
        for _ in range(12):
            s.insert_graph(random_graph(rng, rng.randint(1, 10)), user="alice")
        rid = s.ids()[0]
        s.update_metadata(rid, {"name": "first", "interesting_for": ["girth"]},
                          "alice")
        s.add_comment(rid, "hello world", "alice")
        s.set_invariant_value(rid, "girth", InvariantValue.rational(3))

        before = {r.id: json.dumps(record_to_doc(r), sort_keys=True)
                  for r in s.records()}
        s2 = Store(tmp_path / "db")
        after = {r.id: json.dumps(record_to_doc(r), sort_keys=True)
                 for r in s2.records()}
        assert before == after

    def test_reload_preserves_dedup_and_ids(self, tmp_path):
        s = Store(tmp_path / "db")
        s.register_user("alice")
        rid, created = s.insert_graph(seeds.petersen(), user="alice")
        s2 = Store(tmp_path / "db")
        rid2, created2 = s2.insert_graph(seeds.kneser_5_2(), user="alice")
        assert rid2 == rid and not created2

    def test_tokens_survive_reload(self, tmp_path):
        s = Store(tmp_path / "db")
        _, token = s.register_user("alice")
        s2 = Store(tmp_path / "db")
        assert s2.authenticate(token).login == "alice"

    def test_compaction_keeps_content(self, tmp_path, rng):
        s = Store(tmp_path / "db")
        s.register_user("alice")
        for _ in range(6):
            rid, _ = s.insert_graph(random_graph(rng, 6), user="alice")
            s.add_comment(rid, "note", "alice")
        before = [record_to_doc(r) for r in s.records()]
        s.compact()
        s2 = Store(tmp_path / "db")
        assert [record_to_doc(r) for r in s2.records()] == before


class TestSeedCatalog:
    def test_load_idempotent(self):
        s = Store()
        first = seeds.load_seed_catalog(s)
        size = len(s)
        second = seeds.load_seed_catalog(s)
        assert len(s) == size
        assert not any(created for _, created in second)

    def test_bundle_matches_constructions(self):
        from importlib import resources
        from hogdb import codecs
        root = resources.files("hogdb").joinpath("data/seeds")
        manifest = json.loads(root.joinpath("manifest.json").read_text())
        by_name = {e["name"]: e for e in manifest}
        for entry in seeds.catalog():
            doc = by_name[entry["name"]]
            g = codecs.parse_edge_text(root.joinpath(doc["file"]).read_text())
            assert g == entry["graph"]

    def test_heawood_present_with_cage_provenance(self):
        s = Store()
        seeds.load_seed_catalog(s)
        hw = next(r for r in s.records() if r.name == "Heawood graph")
        assert "(3,6)-cage" in hw.provenance
