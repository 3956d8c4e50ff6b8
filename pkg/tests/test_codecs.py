import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hogdb import seeds
from hogdb.codecs import (CodecError, decode_graph6, decode_graph6_stream,
                          decode_multicode, decode_edge_text_stream,
                          encode_graph6, encode_graph6_stream,
                          encode_edge_text_stream, encode_multicode,
                          parse_edge_text, write_edge_text, write_readable)
from hogdb.graphs import Graph, graph_from_edges

from conftest import random_graph


K1 = graph_from_edges(1, [])
K2 = graph_from_edges(2, [(0, 1)])
K3 = graph_from_edges(3, [(0, 1), (0, 2), (1, 2)])


class TestGraph6:
    @pytest.mark.parametrize("g,line", [(K1, "@"), (K2, "A_"), (K3, "Bw")])
    def test_pinned_vectors(self, g, line):
        assert encode_graph6(g) == line
        assert decode_graph6(line) == g

    def test_empty_graph(self):
        assert encode_graph6(Graph(0, [])) == "?"
        assert decode_graph6("?") == Graph(0, [])

    def test_header_stripped(self):
        assert decode_graph6(">>graph6<<Bw") == K3

    def test_three_byte_size_prefix(self):
        g = Graph(63, [0] * 63)
        line = encode_graph6(g)
        assert line.startswith("~")
        assert decode_graph6(line) == g

    def test_size_limit(self):
        with pytest.raises(CodecError, match="258047"):
            encode_graph6(Graph(258048, [0] * 258048))

    def test_illegal_byte_offset(self):
        with pytest.raises(CodecError, match="byte 1"):
            decode_graph6("B\x1fw")

    def test_truncated(self):
        with pytest.raises(CodecError, match="edge bytes"):
            decode_graph6("D")  # n=5 needs 2 edge bytes

    def test_nonzero_padding(self):
        # K2 has one edge bit + five pad bits; force a pad bit on
        with pytest.raises(CodecError, match="padding"):
            decode_graph6("A" + chr(63 + 0b100001))

    def test_length_formula(self, rng):
        for _ in range(50):
            n = rng.randint(0, 70)
            g = random_graph(rng, n)
            prefix = 1 if n <= 62 else 4
            assert len(encode_graph6(g)) == prefix + (n * (n - 1) // 2 + 5) // 6

    def test_roundtrip_1000_random(self, rng):
        for _ in range(1000):
            g = random_graph(rng, rng.randint(0, 50))
            assert decode_graph6(encode_graph6(g)) == g

    def test_stream_order_preserved(self, rng):
        gs = [random_graph(rng, rng.randint(0, 20)) for _ in range(30)]
        assert decode_graph6_stream(encode_graph6_stream(gs)) == gs

    @given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126),
                   min_size=1, max_size=30))
    @settings(max_examples=300)
    def test_fuzz_never_crashes(self, line):
        try:
            decode_graph6(line)
        except CodecError:
            pass


class TestMulticode:
    def test_pinned_k1(self):
        assert encode_multicode(K1) == bytes([1])
        assert decode_multicode(bytes([1])) == [K1]

    def test_pinned_k3(self):
        assert encode_multicode(K3) == bytes([3, 2, 3, 0, 3, 0])
        assert decode_multicode(bytes([3, 2, 3, 0, 3, 0])) == [K3]

    def test_pinned_stream_k1_k2(self):
        assert encode_multicode([K1, K2]) == bytes([1, 2, 2, 0])
        assert decode_multicode(bytes([1, 2, 2, 0])) == [K1, K2]

    def test_zero_vertex_count_rejected(self):
        with pytest.raises(CodecError, match="zero"):
            decode_multicode(bytes([0]))

    def test_neighbor_out_of_range(self):
        with pytest.raises(CodecError, match="neighbor byte"):
            decode_multicode(bytes([2, 3, 0]))

    def test_neighbor_not_above_vertex(self):
        with pytest.raises(CodecError, match="neighbor byte"):
            decode_multicode(bytes([3, 1, 0, 0]))

    def test_truncated(self):
        with pytest.raises(CodecError, match="truncated"):
            decode_multicode(bytes([3, 2]))

    def test_size_bounds(self):
        with pytest.raises(CodecError):
            encode_multicode(Graph(0, []))
        with pytest.raises(CodecError):
            encode_multicode(Graph(256, [0] * 256))

    def test_boundary_n255(self, rng):
        g = random_graph(rng, 255)
        assert decode_multicode(encode_multicode(g)) == [g]

    def test_roundtrip_random_stream(self, rng):
        gs = [random_graph(rng, rng.randint(1, 60)) for _ in range(50)]
        assert decode_multicode(encode_multicode(gs)) == gs

    @given(st.binary(min_size=1, max_size=40))
    @settings(max_examples=300)
    def test_fuzz_never_crashes(self, data):
        try:
            decode_multicode(data)
        except CodecError:
            pass


class TestEdgeText:
    def test_k2(self):
        assert parse_edge_text("n=2\n1 2\n") == K2

    def test_p4(self):
        assert parse_edge_text("n=4\n1 2\n2 3\n3 4\n") == seeds.path(4)

    def test_without_count_line(self):
        assert parse_edge_text("1 2\n2 3\n") == seeds.path(3)

    def test_comments_and_blanks(self):
        text = "# a triangle\nn=3\n\n1 2\n2 3 # last\n1 3\n"
        assert parse_edge_text(text) == K3

    def test_isolated_vertices_preserved(self):
        g = parse_edge_text("n=5\n1 2\n")
        assert g.n == 5 and g.m == 1

    def test_label_out_of_range(self):
        with pytest.raises(CodecError, match="line 2"):
            parse_edge_text("n=2\n1 3\n")

    def test_malformed_line(self):
        with pytest.raises(CodecError, match="line 1"):
            parse_edge_text("1 2 3\n")

    def test_roundtrip(self, rng):
        for _ in range(200):
            g = random_graph(rng, rng.randint(0, 30))
            assert parse_edge_text(write_edge_text(g)) == g

    def test_stream_roundtrip(self, rng):
        gs = [random_graph(rng, rng.randint(0, 15)) for _ in range(20)]
        assert decode_edge_text_stream(encode_edge_text_stream(gs)) == gs


class TestCrossFormat:
    def test_formats_agree(self, rng):
        for _ in range(100):
            g = random_graph(rng, rng.randint(1, 40))
            via_g6 = decode_graph6(encode_graph6(g))
            via_mc = decode_multicode(encode_multicode(g))[0]
            via_txt = parse_edge_text(write_edge_text(g))
            assert via_g6 == via_mc == via_txt == g


class TestReadable:
    def test_k1_named_trivial(self, store):
        rid, _ = store.insert_graph(K1, user="alice", name="trivial")
        rec = store.get(rid)
        from hogdb.invariants import InvariantValue
        store.set_invariant_value(rid, "n", InvariantValue.rational(1))
        text = write_readable(store.get(rid))
        assert "trivial" in text
        assert "\n1: " in text or text.endswith("1: \n")
        assert "number of vertices = 1" in text

    def test_pending_filtered(self, store):
        rid, _ = store.insert_graph(K3, user="alice", name="tri")
        text = write_readable(store.get(rid))
        assert "=" not in text.split("edges:")[1]  # no invariant lines yet

    def test_heawood_girth_line(self, store):
        from hogdb.invariants import compute
        rid, _ = store.insert_graph(seeds.heawood(), user="alice", name="hw")
        store.set_invariant_value(rid, "girth", compute(seeds.heawood(), "girth"))
        assert "girth = 6" in write_readable(store.get(rid))

    def test_undefined_rendered(self, store):
        from hogdb.invariants import compute
        rid, _ = store.insert_graph(seeds.path(4), user="alice")
        store.set_invariant_value(rid, "girth", compute(seeds.path(4), "girth"))
        assert "girth = undefined" in write_readable(store.get(rid))
