"""Bit-exact graph interchange codecs: graph6, multicode, edge text, readable.

Layouts are frozen in docs/FORMATS.md. Decoders validate aggressively
and raise CodecError with a byte or line offset; they never crash on
fuzzed input.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _bits
from .graphs import Graph, GraphError, graph_from_edges

GRAPH6_HEADER = ">>graph6<<"


class CodecError(ValueError):
    """Malformed input for one of the interchange formats."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


# -- graph6 -----------------------------------------------------------------

def encode_graph6(g: Graph) -> str:
    """One graph6 line (without newline); n may not exceed 258047."""
    if g.n > _bits.GRAPH6_MAX_N:
        raise CodecError(f"graph6 supports at most {_bits.GRAPH6_MAX_N} vertices, got {g.n}")
    return _bits.line_from_code(g.n, _bits.code_from_rows(g.n, g.rows))


def decode_graph6(line: str) -> Graph:
    """Inverse of encode_graph6; accepts and strips the optional header."""
    s = line.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise CodecError("empty graph6 line")
    data = s.encode("ascii", errors="replace")
    for off, b in enumerate(data):
        if not 63 <= b <= 126:
            raise CodecError(f"illegal graph6 byte {b}", off)
    n, pos = _decode_size(data)
    w = _bits.pair_count(n)
    need = -(-w // 6)
    if len(data) - pos != need:
        raise CodecError(
            f"expected {need} edge bytes for n={n}, found {len(data) - pos}", pos)
    code = 0
    for b in data[pos:]:
        code = (code << 6) | (b - 63)
    pad = need * 6 - w
    if pad and code & ((1 << pad) - 1):
        raise CodecError("nonzero padding bits", len(data) - 1)
    rows = _bits.rows_from_code(n, code >> pad)
    return Graph(n, rows)


def _decode_size(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 4:
        raise CodecError("truncated size prefix", len(data))
    if data[1] == 126:
        raise CodecError("six-byte size prefix (n > 258047) not supported", 1)
    n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
    return n, 4


def encode_graph6_stream(graphs: Iterable[Graph]) -> str:
    """Newline-terminated graph6 lines, one graph per line."""
    return "".join(encode_graph6(g) + "\n" for g in graphs)


def decode_graph6_stream(text: str) -> list[Graph]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and line != GRAPH6_HEADER:
            out.append(decode_graph6(line))
    return out


# -- multicode --------------------------------------------------------------

def encode_multicode(graphs: Iterable[Graph] | Graph) -> bytes:
    """Binary multicode stream: per graph one byte n, then for each vertex
    i = 1..n-1 its neighbors above i in ascending order, 0-terminated."""
    if isinstance(graphs, Graph):
        graphs = [graphs]
    out = bytearray()
    for g in graphs:
        if not 1 <= g.n <= 255:
            raise CodecError(f"multicode supports 1..255 vertices, got {g.n}")
        out.append(g.n)
        for v in range(g.n - 1):
            for u in g.neighbors(v):
                if u > v:
                    out.append(u + 1)
            out.append(0)
    return bytes(out)


def decode_multicode(data: bytes) -> list[Graph]:
    """Inverse of encode_multicode; the stream must end on a graph boundary."""
    graphs = []
    pos = 0
    total = len(data)
    while pos < total:
        n = data[pos]
        if n == 0:
            raise CodecError("vertex count byte is zero", pos)
        pos += 1
        edges = []
        for v in range(1, n):
            while True:
                if pos >= total:
                    raise CodecError(f"stream truncated in adjacency list of vertex {v}", pos)
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b <= v or b > n:
                    raise CodecError(
                        f"neighbor byte {b} out of range for vertex {v} (n={n})", pos - 1)
                edges.append((v - 1, b - 1))
        graphs.append(graph_from_edges(n, edges))
    return graphs


# -- edge text --------------------------------------------------------------

def parse_edge_text(text: str) -> Graph:
    """Plain text: optional first line "n=<count>", then "<u> <v>" lines
    with 1-based labels; '#' starts a comment. Without the count line,
    n is the largest label mentioned."""
    n, edges = _parse_edge_block(text.splitlines(), 0)
    return _edge_block_graph(n, edges)


def _parse_edge_block(lines: Sequence[str], start: int) -> tuple[int | None, list]:
    n = None
    edges = []
    for lineno in range(start, len(lines)):
        line = lines[lineno].split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            if n is not None or edges:
                raise CodecError(f"unexpected n= line {lineno + 1}")
            try:
                n = int(line[2:])
            except ValueError:
                raise CodecError(f"malformed vertex count on line {lineno + 1}") from None
            if n < 0:
                raise CodecError(f"negative vertex count on line {lineno + 1}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CodecError(f"malformed edge on line {lineno + 1}: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise CodecError(f"malformed edge on line {lineno + 1}: {line!r}") from None
        edges.append((u, v, lineno + 1))
    return n, edges


def _edge_block_graph(n: int | None, edges: list) -> Graph:
    if n is None:
        n = max((max(u, v) for u, v, _ in edges), default=0)
    try:
        return graph_from_edges(n, [(u - 1, v - 1) for u, v, _ in edges])
    except GraphError:
        for u, v, lineno in edges:
            if u == v or not (1 <= u <= n and 1 <= v <= n):
                raise CodecError(f"bad edge ({u}, {v}) on line {lineno}") from None
        raise


def write_edge_text(g: Graph) -> str:
    lines = [f"n={g.n}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def encode_edge_text_stream(graphs: Iterable[Graph]) -> str:
    """Multi-graph edge text: blocks separated by their n= headers."""
    return "\n".join(write_edge_text(g) for g in graphs)


def decode_edge_text_stream(text: str) -> list[Graph]:
    lines = text.splitlines()
    blocks: list[list[str]] = []
    current: list[str] | None = None
    for raw in lines:
        stripped = raw.split("#", 1)[0].strip()
        if stripped.startswith("n="):
            current = [raw]
            blocks.append(current)
        elif stripped:
            if current is None:
                current = [raw]
                blocks.append(current)
            else:
                current.append(raw)
    return [parse_edge_text("\n".join(b)) for b in blocks]


# -- human readable ---------------------------------------------------------

def write_readable(record) -> str:
    """Human-readable record export: header, adjacency, computed invariants.

    Accepts a store GraphRecord; adjacency uses 1-based labels and only
    COMPUTED invariant values appear, in registry order.
    """
    from .invariants import REGISTRY, format_value  # late import, store-level type

    g = record.graph
    name = record.name or "(unnamed)"
    lines = [f"Graph {record.id}: {name}",
             f"vertices: {g.n}",
             f"edges: {g.m}"]
    for v in range(g.n):
        lines.append(f"{v + 1}: " + " ".join(str(u + 1) for u in g.neighbors(v)))
    for inv in REGISTRY:
        value = record.invariant_values.get(inv.id)
        if value is not None and value.is_computed:
            lines.append(f"{inv.display} = {format_value(value)}")
    return "\n".join(lines) + "\n"
