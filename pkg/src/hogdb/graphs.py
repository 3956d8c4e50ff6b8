"""Labeled simple undirected graphs, permutations, and canonical form.

Canonical keys are graph6 lines of a canonically relabeled copy; two
graphs get equal keys iff they are isomorphic, which is the identity
used for deduplication everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _bits, kernels


class GraphError(ValueError):
    """Structurally invalid graph input."""


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Adjacency is one integer bitmask per vertex: bit u of rows[v] is set
    iff u and v are adjacent. No self-loops, no parallel edges, and the
    bitmasks are kept symmetric by every constructor.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        self.n = n
        self.rows = tuple(rows)

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        r = self.rows[v]
        out = []
        while r:
            u = (r & -r).bit_length() - 1
            out.append(u)
            r &= r - 1
        return out

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            r = self.rows[v] >> (v + 1)
            u = v + 1
            while r:
                if r & 1:
                    out.append((v, u))
                r >>= 1
                u += 1
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[v] >> u) & 1)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(r.bit_count() for r in self.rows))

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [(full & ~r) & ~(1 << v) for v, r in enumerate(self.rows)])

    def check(self) -> None:
        """Assert the structural invariants; used by decoders and tests."""
        n = self.n
        if len(self.rows) != n:
            raise GraphError("row count differs from vertex count")
        for v, r in enumerate(self.rows):
            if r >> n:
                raise GraphError(f"vertex {v} has a neighbor out of range")
            if (r >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
            u = r
            while u:
                w = (u & -u).bit_length() - 1
                if not (self.rows[w] >> v) & 1:
                    raise GraphError(f"asymmetric edge ({v}, {w})")
                u &= u - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Permutation:
    """A bijection on 0..n-1; image[v] is where v is sent."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise GraphError("permutation image is not a bijection")

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for old, new in enumerate(self.image):
            inv[new] = old
        return Permutation(tuple(inv))

    def compose(self, inner: "Permutation") -> "Permutation":
        """self o inner: apply inner first, then self."""
        return Permutation(tuple(self.image[inner.image[v]] for v in range(len(self.image))))


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list, collapsing duplicates.

    Rejects endpoints outside [0, n) and self-loops, naming the pair.
    """
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


def permute(g: Graph, p: Permutation) -> Graph:
    """Relabel g by p: the image has edge (p(u), p(v)) for each edge (u, v)."""
    if len(p) != g.n:
        raise GraphError(f"permutation length {len(p)} differs from n={g.n}")
    img = p.image
    rows = [0] * g.n
    for v in range(g.n):
        r = g.rows[v]
        nv = img[v]
        while r:
            u = (r & -r).bit_length() - 1
            rows[nv] |= 1 << img[u]
            r &= r - 1
    return Graph(g.n, rows)


def canonical_form(g: Graph) -> tuple[Permutation, str]:
    """Canonical permutation and canonical key (a graph6 line).

    The key is identical for all relabelings of g and distinct between
    non-isomorphic graphs; permute(g, perm) is the graph the key encodes.
    """
    perm, code = kernels.canonicalize(g.n, g.rows)
    return Permutation(tuple(perm)), _bits.line_from_code(g.n, code)


def canonical_key(g: Graph) -> str:
    return canonical_form(g)[1]


def canonical_graph(g: Graph) -> tuple[Graph, Permutation, str]:
    """Canonically relabeled copy plus the permutation and key."""
    perm, key = canonical_form(g)
    return permute(g, perm), perm, key


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_key(g) == canonical_key(h)


def isomorphism_witness(g: Graph, h: Graph) -> Permutation | None:
    """A permutation w with permute(g, w) == h, or None if not isomorphic."""
    pg, kg = canonical_form(g)
    ph, kh = canonical_form(h)
    if kg != kh:
        return None
    return ph.inverse().compose(pg)
