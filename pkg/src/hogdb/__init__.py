"""hogdb: a self-hosted database of interesting graphs.

Graphs are deduplicated up to isomorphism via canonical graph6 keys,
invariants are computed exactly under budgets by a background queue,
and the catalog answers composable restriction-step searches with
bit-exact import/export in graph6, multicode, and edge-text formats.
"""

from .graphs import (Graph, GraphError, Permutation, canonical_form,
                     canonical_key, graph_from_edges, is_isomorphic,
                     isomorphism_witness, permute)
from .kernels import BACKEND
from .store import Store

__all__ = [
    "BACKEND",
    "Graph",
    "GraphError",
    "Permutation",
    "Store",
    "canonical_form",
    "canonical_key",
    "graph_from_edges",
    "is_isomorphic",
    "isomorphism_witness",
    "permute",
]

__version__ = "0.1.0"
