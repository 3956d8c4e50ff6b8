"""The invariant registry and its exact computation engine.

Seventeen invariants, fixed at build time. Polynomial ones run uncapped;
the NP-hard ones (chi, omega, alpha, mu) run under a wall-clock budget
and report UNKNOWN on timeout. All numeric results are exact rationals,
never floats, so range and equality filters behave reproducibly.

UNDEFINED (girth of a forest, diameter of a disconnected graph) is a
COMPUTED outcome: the engine finished and the value does not exist.
UNKNOWN means the budget ran out before the solver did.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from . import kernels, matching
from .graphs import Graph


class Kind(Enum):
    RATIONAL = "RATIONAL"
    BOOLEAN = "BOOLEAN"
    UNDEFINED = "UNDEFINED"


class Status(Enum):
    PENDING = "PENDING"
    COMPUTED = "COMPUTED"
    UNKNOWN = "UNKNOWN"


class CostClass(Enum):
    POLY = "POLY"
    EXP = "EXP"


@dataclass(frozen=True)
class InvariantValue:
    kind: Kind
    value: Fraction | bool | None
    status: Status

    def __post_init__(self):
        if (self.value is not None) != (self.status is Status.COMPUTED and self.kind is not Kind.UNDEFINED):
            raise ValueError("value must be present iff status is COMPUTED (and defined)")

    @property
    def is_computed(self) -> bool:
        return self.status is Status.COMPUTED

    @staticmethod
    def rational(x) -> "InvariantValue":
        return InvariantValue(Kind.RATIONAL, Fraction(x), Status.COMPUTED)

    @staticmethod
    def boolean(b: bool) -> "InvariantValue":
        return InvariantValue(Kind.BOOLEAN, bool(b), Status.COMPUTED)


UNDEFINED = InvariantValue(Kind.UNDEFINED, None, Status.COMPUTED)
PENDING = InvariantValue(Kind.RATIONAL, None, Status.PENDING)
UNKNOWN = InvariantValue(Kind.RATIONAL, None, Status.UNKNOWN)


@dataclass(frozen=True)
class InvariantId:
    id: str
    display: str
    kind: Kind          # kind of a defined result
    cost: CostClass

    def __str__(self) -> str:
        return self.id


REGISTRY: tuple[InvariantId, ...] = (
    InvariantId("n", "number of vertices", Kind.RATIONAL, CostClass.POLY),
    InvariantId("m", "number of edges", Kind.RATIONAL, CostClass.POLY),
    InvariantId("mindeg", "minimum degree", Kind.RATIONAL, CostClass.POLY),
    InvariantId("maxdeg", "maximum degree", Kind.RATIONAL, CostClass.POLY),
    InvariantId("avgdeg", "average degree", Kind.RATIONAL, CostClass.POLY),
    InvariantId("regular", "regular", Kind.BOOLEAN, CostClass.POLY),
    InvariantId("bipartite", "bipartite", Kind.BOOLEAN, CostClass.POLY),
    InvariantId("connected", "connected", Kind.BOOLEAN, CostClass.POLY),
    InvariantId("components", "number of components", Kind.RATIONAL, CostClass.POLY),
    InvariantId("girth", "girth", Kind.RATIONAL, CostClass.POLY),
    InvariantId("diameter", "diameter", Kind.RATIONAL, CostClass.POLY),
    InvariantId("radius", "radius", Kind.RATIONAL, CostClass.POLY),
    InvariantId("chi", "chromatic number", Kind.RATIONAL, CostClass.EXP),
    InvariantId("omega", "clique number", Kind.RATIONAL, CostClass.EXP),
    InvariantId("alpha", "independence number", Kind.RATIONAL, CostClass.EXP),
    InvariantId("mu", "matching number", Kind.RATIONAL, CostClass.EXP),
    InvariantId("triangle_free", "triangle-free", Kind.BOOLEAN, CostClass.POLY),
)

BY_ID = {inv.id: inv for inv in REGISTRY}

DEFAULT_BUDGET = 60.0  # seconds, per EXP invariant


class UnknownInvariant(KeyError):
    pass


def lookup(inv_id: str) -> InvariantId:
    try:
        return BY_ID[inv_id]
    except KeyError:
        raise UnknownInvariant(f"unknown invariant {inv_id!r}") from None


def format_value(v: InvariantValue) -> str:
    if not v.is_computed:
        return v.status.value.lower()
    if v.kind is Kind.UNDEFINED:
        return "undefined"
    if v.kind is Kind.BOOLEAN:
        return "true" if v.value else "false"
    f = v.value
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# -- polynomial invariants ----------------------------------------------------

def degree_stats(g: Graph) -> tuple[InvariantValue, InvariantValue, InvariantValue, InvariantValue]:
    """(mindeg, maxdeg, avgdeg, regular); all UNDEFINED on the empty graph."""
    if g.n == 0:
        return UNDEFINED, UNDEFINED, UNDEFINED, UNDEFINED
    degs = [r.bit_count() for r in g.rows]
    lo, hi = min(degs), max(degs)
    avg = Fraction(2 * g.m, g.n)
    return (InvariantValue.rational(lo), InvariantValue.rational(hi),
            InvariantValue(Kind.RATIONAL, avg, Status.COMPUTED),
            InvariantValue.boolean(lo == hi))


def connectivity_stats(g: Graph) -> tuple[InvariantValue, InvariantValue]:
    """(connected, components); the empty graph has 0 components."""
    comps = _component_count(g)
    return InvariantValue.boolean(comps == 1), InvariantValue.rational(comps)


def _component_count(g: Graph) -> int:
    seen = 0
    comps = 0
    full = (1 << g.n) - 1
    while seen != full:
        start = ((~seen) & full)
        v = (start & -start).bit_length() - 1
        comps += 1
        frontier = 1 << v
        comp = frontier
        while frontier:
            nxt = 0
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= g.rows[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
    return comps


def bipartite(g: Graph) -> InvariantValue:
    """Two-colorability by breadth-first search over each component."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for u in g.neighbors(v):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    q.append(u)
                elif color[u] == color[v]:
                    return InvariantValue.boolean(False)
    return InvariantValue.boolean(True)


def girth(g: Graph) -> InvariantValue:
    """Shortest cycle length via BFS from every vertex; UNDEFINED if acyclic."""
    best = None
    n = g.n
    for s in range(n):
        dist = [-1] * n
        par = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            # neighbors sit at depth >= dist[v]-1, so nothing shorter than
            # 2*dist[v] can still appear from this root
            if best is not None and 2 * dist[v] >= best:
                break
            for u in g.neighbors(v):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    par[u] = v
                    q.append(u)
                elif u != par[v]:
                    cyc = dist[v] + dist[u] + 1
                    if best is None or cyc < best:
                        best = cyc
    return InvariantValue.rational(best) if best is not None else UNDEFINED


def diameter_radius(g: Graph) -> tuple[InvariantValue, InvariantValue]:
    """All-pairs eccentricities by repeated BFS; UNDEFINED when disconnected."""
    if g.n == 0 or _component_count(g) != 1:
        return UNDEFINED, UNDEFINED
    ecc = []
    for s in range(g.n):
        dist = {s: 0}
        frontier = 1 << s
        seen = frontier
        d = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= g.rows[u]
            frontier = nxt & ~seen
            seen |= frontier
            if frontier:
                d += 1
        ecc.append(d)
    return InvariantValue.rational(max(ecc)), InvariantValue.rational(min(ecc))


def triangle_free(g: Graph) -> InvariantValue:
    for u, v in g.edges():
        if g.rows[u] & g.rows[v]:
            return InvariantValue.boolean(False)
    return InvariantValue.boolean(True)


# -- budgeted exact solvers ---------------------------------------------------

def _finish(result: int | None) -> InvariantValue:
    return InvariantValue.rational(result) if result is not None else UNKNOWN


def _chi(g: Graph, deadline: float) -> InvariantValue:
    return _finish(kernels.chromatic_number(g.n, g.rows, deadline))


def _omega(g: Graph, deadline: float) -> InvariantValue:
    return _finish(kernels.max_clique_size(g.n, g.rows, deadline))


def _alpha(g: Graph, deadline: float) -> InvariantValue:
    c = g.complement()
    return _finish(kernels.max_clique_size(c.n, c.rows, deadline))


def _mu(g: Graph, deadline: float) -> InvariantValue:
    return _finish(matching.max_matching_size(g.n, g.rows, deadline))


def _deadline(budget: float) -> float:
    return time.monotonic() + budget


def chromatic_number(g: Graph, budget: float = DEFAULT_BUDGET) -> InvariantValue:
    return _chi(g, _deadline(budget))


def clique_number(g: Graph, budget: float = DEFAULT_BUDGET) -> InvariantValue:
    return _omega(g, _deadline(budget))


def independence_number(g: Graph, budget: float = DEFAULT_BUDGET) -> InvariantValue:
    return _alpha(g, _deadline(budget))


def matching_number(g: Graph, budget: float = DEFAULT_BUDGET) -> InvariantValue:
    return _mu(g, _deadline(budget))


# -- dispatch -----------------------------------------------------------------

def _stat(index: int, fn: Callable) -> Callable[[Graph], InvariantValue]:
    return lambda g: fn(g)[index]


_COMPUTERS: dict[str, Callable[..., InvariantValue]] = {
    "n": lambda g: InvariantValue.rational(g.n),
    "m": lambda g: InvariantValue.rational(g.m),
    "mindeg": _stat(0, degree_stats),
    "maxdeg": _stat(1, degree_stats),
    "avgdeg": _stat(2, degree_stats),
    "regular": _stat(3, degree_stats),
    "bipartite": bipartite,
    "connected": _stat(0, connectivity_stats),
    "components": _stat(1, connectivity_stats),
    "girth": girth,
    "diameter": _stat(0, diameter_radius),
    "radius": _stat(1, diameter_radius),
    "chi": _chi,
    "omega": _omega,
    "alpha": _alpha,
    "mu": _mu,
    "triangle_free": triangle_free,
}


def compute(g: Graph, inv: InvariantId | str, budget: float = DEFAULT_BUDGET) -> InvariantValue:
    """Compute one invariant; UNKNOWN if an EXP solver misses its budget.

    Deterministic whenever it completes, and completion is monotone in
    the budget: a larger budget can only turn UNKNOWN into COMPUTED.
    The budget clock starts here, so dispatch overhead counts against it.
    """
    deadline = time.monotonic() + (budget if budget > 0 else 0)
    if budget <= 0:
        raise ValueError("budget must be positive")
    if isinstance(inv, str):
        inv = lookup(inv)
    elif inv.id not in BY_ID:
        raise UnknownInvariant(f"unknown invariant {inv.id!r}")
    fn = _COMPUTERS[inv.id]
    if inv.cost is CostClass.EXP:
        return fn(g, deadline)
    return fn(g)
