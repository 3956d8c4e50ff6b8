"""The seed catalog: named classic graphs shipped with the package.

Constructions live here; the edge-text bundle under data/seeds/ (one
file per graph plus manifest.json) is generated from them and is what
the loader actually reads, so seeding exercises the same codec path as
any user import. Loading is idempotent thanks to canonical dedup.
"""

from __future__ import annotations

import json
from itertools import combinations
from importlib import resources

from . import codecs
from .graphs import Graph, graph_from_edges
from .store import Store

SEED_OWNER = "catalog"


def cycle(k: int) -> Graph:
    return graph_from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> Graph:
    return graph_from_edges(k, [(i, i + 1) for i in range(k - 1)])


def complete(k: int) -> Graph:
    return graph_from_edges(k, list(combinations(range(k), 2)))


def star(leaves: int) -> Graph:
    return graph_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return graph_from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def generalized_petersen(n: int, k: int) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + (i + k) % n) for i in range(n)]
    return graph_from_edges(2 * n, edges)


def lcf(n: int, pattern: list[int]) -> Graph:
    """Hamiltonian cycle 0..n-1 plus the chord i -> i + pattern[i mod len]."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    for i in range(n):
        edges.append((i, (i + pattern[i % len(pattern)]) % n))
    return graph_from_edges(n, edges)


def petersen() -> Graph:
    return generalized_petersen(5, 2)


def kneser_5_2() -> Graph:
    """Vertices are the 2-subsets of a 5-set, adjacent when disjoint."""
    subsets = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2)
             if not set(subsets[i]) & set(subsets[j])]
    return graph_from_edges(10, edges)


def heawood() -> Graph:
    return lcf(14, [5, -5])


def mobius_kantor() -> Graph:
    return generalized_petersen(8, 3)


def pappus() -> Graph:
    return lcf(18, [5, 7, -7, 7, -7, -5])


def desargues() -> Graph:
    return generalized_petersen(10, 3)


def dodecahedron() -> Graph:
    return generalized_petersen(10, 2)


def cube() -> Graph:
    return graph_from_edges(8, [(u, v) for u, v in combinations(range(8), 2)
                                if bin(u ^ v).count("1") == 1])


def octahedron() -> Graph:
    return graph_from_edges(6, [(u, v) for u, v in combinations(range(6), 2)
                                if v != u + 1 or u % 2 == 1])


def wheel(rim: int) -> Graph:
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return graph_from_edges(rim + 1, edges)


def grotzsch() -> Graph:
    """Mycielskian of C5: triangle-free with chromatic number 4."""
    edges = []
    for i in range(5):
        j = (i + 1) % 5
        edges.append((i, j))          # the cycle
        edges.append((5 + i, j))      # shadow vertices to cycle neighbours
        edges.append((5 + j, i))
        edges.append((10, 5 + i))     # hub
    return graph_from_edges(11, edges)


def bull() -> Graph:
    return graph_from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)])


def house() -> Graph:
    return graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])


def diamond() -> Graph:
    return graph_from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def butterfly() -> Graph:
    return graph_from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def catalog() -> list[dict]:
    """All seed entries: name, file slug, construction, metadata."""
    entries = [
        dict(slug="k1", name="singleton graph K1", graph=complete(1),
             provenance="the one-vertex graph", interesting_for=[]),
        dict(slug="petersen", name="Petersen graph", graph=petersen(),
             provenance="smallest 3-regular graph of girth 5; standard counterexample source",
             interesting_for=["girth", "chi"]),
        dict(slug="kneser_5_2", name="Kneser graph K(5,2)", graph=kneser_5_2(),
             provenance="2-subsets of a 5-set, disjointness adjacency",
             interesting_for=["alpha"]),
        dict(slug="heawood", name="Heawood graph", graph=heawood(),
             provenance="(3,6)-cage: smallest cubic graph of girth 6; "
                        "point-line incidence graph of the Fano plane",
             interesting_for=["girth"]),
        dict(slug="moebius_kantor", name="Moebius-Kantor graph", graph=mobius_kantor(),
             provenance="generalized Petersen graph GP(8,3)", interesting_for=["girth"]),
        dict(slug="pappus", name="Pappus graph", graph=pappus(),
             provenance="incidence graph of the Pappus configuration", interesting_for=["girth"]),
        dict(slug="desargues", name="Desargues graph", graph=desargues(),
             provenance="generalized Petersen graph GP(10,3); bipartite double "
                        "cover of the Petersen graph",
             interesting_for=["girth"]),
        dict(slug="dodecahedron", name="dodecahedral graph", graph=dodecahedron(),
             provenance="skeleton of the regular dodecahedron, GP(10,2)",
             interesting_for=["diameter"]),
        dict(slug="grotzsch", name="Groetzsch graph", graph=grotzsch(),
             provenance="smallest triangle-free graph with chromatic number 4",
             interesting_for=["chi", "triangle_free"]),
        dict(slug="cube", name="cube graph Q3", graph=cube(),
             provenance="3-dimensional hypercube skeleton", interesting_for=[]),
        dict(slug="octahedron", name="octahedron K2,2,2", graph=octahedron(),
             provenance="complete tripartite K2,2,2", interesting_for=[]),
        dict(slug="k33", name="complete bipartite K3,3", graph=complete_bipartite(3, 3),
             provenance="the utility graph", interesting_for=["chi"]),
        dict(slug="k23", name="complete bipartite K2,3", graph=complete_bipartite(2, 3),
             provenance="", interesting_for=[]),
        dict(slug="bull", name="bull graph", graph=bull(),
             provenance="triangle with two horns", interesting_for=[]),
        dict(slug="house", name="house graph", graph=house(),
             provenance="square with a roof", interesting_for=[]),
        dict(slug="diamond", name="diamond graph", graph=diamond(),
             provenance="K4 minus an edge", interesting_for=[]),
        dict(slug="butterfly", name="butterfly graph", graph=butterfly(),
             provenance="two triangles sharing a vertex", interesting_for=[]),
        dict(slug="wheel6", name="wheel on 6 vertices", graph=wheel(5),
             provenance="hub joined to a 5-cycle", interesting_for=[]),
    ]
    for k in range(2, 7):
        entries.append(dict(slug=f"k{k}", name=f"complete graph K{k}",
                            graph=complete(k), provenance="", interesting_for=[]))
    for k in range(4, 11):
        entries.append(dict(slug=f"c{k}", name=f"cycle C{k}", graph=cycle(k),
                            provenance="", interesting_for=[]))
    for k in range(3, 9):
        entries.append(dict(slug=f"p{k}", name=f"path P{k}", graph=path(k),
                            provenance="", interesting_for=[]))
    for k in range(3, 7):
        entries.append(dict(slug=f"star{k}", name=f"star K1,{k}", graph=star(k),
                            provenance="claw" if k == 3 else "", interesting_for=[]))
    return entries


def write_bundle(directory) -> None:
    """Materialize the edge-text bundle + manifest (used to regenerate data/)."""
    from pathlib import Path

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = []
    for entry in catalog():
        fname = f"{entry['slug']}.txt"
        (directory / fname).write_text(codecs.write_edge_text(entry["graph"]))
        manifest.append({"file": fname, "name": entry["name"],
                         "provenance": entry["provenance"] or None,
                         "interesting_for": entry["interesting_for"]})
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def load_seed_catalog(store: Store, owner: str = SEED_OWNER) -> list[tuple[int, bool]]:
    """Import the bundled catalog through the edge-text codec; idempotent."""
    if owner not in store._users:
        store.register_user(owner)
    results = []
    root = resources.files("hogdb").joinpath("data/seeds")
    manifest = json.loads(root.joinpath("manifest.json").read_text())
    for entry in manifest:
        g = codecs.parse_edge_text(root.joinpath(entry["file"]).read_text())
        results.append(store.insert_graph(
            g, user=owner, name=entry["name"], provenance=entry["provenance"],
            interesting_for=entry["interesting_for"]))
    return results
