"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled backend (hogdb._ckern, built from Cython) handles graphs
up to 64 vertices; anything larger is routed to the pure implementation,
which works on arbitrary-precision bitmasks. Set HOGDB_PURE=1 to force
the fallback, e.g. for benchmarking or debugging.
"""

from __future__ import annotations

import os

from . import _pykern

_ckern = None
if not os.environ.get("HOGDB_PURE"):
    try:
        from . import _ckern  # type: ignore[no-redef]
    except ImportError:
        _ckern = None

BACKEND = "compiled" if _ckern is not None else "pure"

_C_MAX_N = 64


def canonicalize(n: int, rows) -> tuple[list[int], int]:
    if _ckern is not None and n <= _C_MAX_N:
        return _ckern.canonicalize(n, rows)
    return _pykern.canonicalize(n, rows)


def max_clique_size(n: int, rows, deadline: float | None = None):
    if _ckern is not None and n <= _C_MAX_N:
        return _ckern.max_clique_size(n, rows, deadline)
    return _pykern.max_clique_size(n, rows, deadline)


def chromatic_number(n: int, rows, deadline: float | None = None):
    if _ckern is not None and n <= _C_MAX_N:
        return _ckern.chromatic_number(n, rows, deadline)
    return _pykern.chromatic_number(n, rows, deadline)
