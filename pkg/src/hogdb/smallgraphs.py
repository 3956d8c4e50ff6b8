"""Exhaustive enumeration of small graphs; a test oracle, not a generator.

Labeled graphs on n vertices are identified with the 2^(n(n-1)/2)
upper-triangle codes (see _bits). Isomorphism-class representatives are
built level by level: every class on n vertices arises by attaching a
new last vertex, with each possible neighbour set, to some class on
n-1 vertices, followed by canonical deduplication.
"""

from __future__ import annotations

from . import _bits
from .graphs import Graph, canonical_form, permute


def labeled_graph_count(n: int) -> int:
    return 1 << _bits.pair_count(n)


def all_labeled_graphs(n: int):
    """Yields every labeled graph on n vertices exactly once."""
    for code in range(labeled_graph_count(n)):
        yield Graph(n, _bits.rows_from_code(n, code))


def is_connected_rows(n: int, rows) -> bool:
    if n == 0:
        return False
    seen = 1
    frontier = 1
    full = (1 << n) - 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def class_representatives(n: int) -> list[Graph]:
    """One canonically labeled representative per isomorphism class."""
    if n == 0:
        return [Graph(0, [])]
    reps = [Graph(1, [0])]
    for size in range(2, n + 1):
        seen: dict[str, Graph] = {}
        for g in reps:
            base = list(g.rows) + [0]
            for attach in range(1 << (size - 1)):
                rows = list(base)
                rows[size - 1] = attach
                a = attach
                while a:
                    v = (a & -a).bit_length() - 1
                    a &= a - 1
                    rows[v] |= 1 << (size - 1)
                h = Graph(size, rows)
                perm, key = canonical_form(h)
                if key not in seen:
                    seen[key] = permute(h, perm)
        reps = [seen[k] for k in sorted(seen)]
    return reps


def connected_class_representatives(n: int) -> list[Graph]:
    return [g for g in class_representatives(n) if is_connected_rows(g.n, g.rows)]
