"""Composable restriction-step search over the store.

A query is an ordered list of restriction steps; each step reduces the
current sublist, so the result set is independent of step order. Steps
that depend on invariant values only ever match COMPUTED values: a
graph whose value is PENDING, UNKNOWN, or UNDEFINED is excluded from
range and boolean filters, and expression filters keep exactly the
TRUE (satisfy) or FALSE (do not satisfy) graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import codecs, exprlang
from .graphs import Graph, canonical_key
from .invariants import BY_ID, Kind
from .store import GraphRecord, Store


class QueryError(ValueError):
    pass


class Polarity(Enum):
    SATISFY = "SATISFY"
    NOT_SATISFY = "NOT_SATISFY"


@dataclass(frozen=True)
class Keyword:
    text: str


@dataclass(frozen=True)
class Range:
    invariant: str
    low: Fraction | None = None
    high: Fraction | None = None
    inclusive: bool = True

    def __post_init__(self):
        inv = BY_ID.get(self.invariant)
        if inv is None:
            raise QueryError(f"unknown invariant {self.invariant!r}")
        if inv.kind is not Kind.RATIONAL:
            raise QueryError(f"range step needs a numeric invariant, got {self.invariant!r}")
        if self.low is None and self.high is None:
            raise QueryError("range step needs at least one bound")
        if self.low is not None and self.high is not None and self.low > self.high:
            raise QueryError("range low bound exceeds high bound")


@dataclass(frozen=True)
class InterestingFor:
    invariant: str

    def __post_init__(self):
        if self.invariant not in BY_ID:
            raise QueryError(f"unknown invariant {self.invariant!r}")


@dataclass(frozen=True)
class ExprSatisfy:
    expression: exprlang.Expression
    polarity: Polarity = Polarity.SATISFY

    @staticmethod
    def parse(text: str, polarity: Polarity = Polarity.SATISFY) -> "ExprSatisfy":
        return ExprSatisfy(exprlang.parse_expression(text), polarity)


@dataclass(frozen=True)
class ExactGraph:
    key: str

    @staticmethod
    def of(g: Graph) -> "ExactGraph":
        return ExactGraph(canonical_key(g))


@dataclass(frozen=True)
class BooleanIs:
    invariant: str
    value: bool

    def __post_init__(self):
        inv = BY_ID.get(self.invariant)
        if inv is None:
            raise QueryError(f"unknown invariant {self.invariant!r}")
        if inv.kind is not Kind.BOOLEAN:
            raise QueryError(f"boolean step needs a boolean invariant, got {self.invariant!r}")


RestrictionStep = Keyword | Range | InterestingFor | ExprSatisfy | ExactGraph | BooleanIs


@dataclass
class Query:
    steps: list = field(default_factory=list)
    sort: str = "id"  # id | any invariant short name
    offset: int = 0
    limit: int | None = None


def _matches(rec: GraphRecord, step: RestrictionStep) -> bool:
    if isinstance(step, Keyword):
        return step.text.lower() in rec.searchable_text().lower()
    if isinstance(step, Range):
        v = rec.invariant_values.get(step.invariant)
        if v is None or not v.is_computed or v.kind is not Kind.RATIONAL:
            return False
        if step.inclusive:
            return ((step.low is None or step.low <= v.value)
                    and (step.high is None or v.value <= step.high))
        return ((step.low is None or step.low < v.value)
                and (step.high is None or v.value < step.high))
    if isinstance(step, InterestingFor):
        return step.invariant in rec.interesting_for
    if isinstance(step, ExprSatisfy):
        out = exprlang.evaluate(step.expression, rec.invariant_values)
        want = (exprlang.TriBool.TRUE if step.polarity is Polarity.SATISFY
                else exprlang.TriBool.FALSE)
        return out is want
    if isinstance(step, ExactGraph):
        return rec.canonical_key == step.key
    if isinstance(step, BooleanIs):
        v = rec.invariant_values.get(step.invariant)
        if v is None or not v.is_computed or v.kind is not Kind.BOOLEAN:
            return False
        return v.value is step.value
    raise QueryError(f"unknown restriction step {step!r}")


def apply_restriction(store: Store, current: set[int], step: RestrictionStep) -> set[int]:
    """Reduce the current id set to the members matching the step."""
    return {i for i in current if _matches(store.get(i), step)}


def _sort_key(rec: GraphRecord, sort: str):
    if sort == "id":
        return (0, 0, rec.id)
    if sort == "n":  # intrinsic to the stored graph, never pending
        return (0, rec.graph.n, rec.id)
    v = rec.invariant_values.get(sort)
    if v is None or not v.is_computed or v.kind is Kind.UNDEFINED:
        return (1, 0, rec.id)  # records without a value sort last
    value = v.value if v.kind is Kind.RATIONAL else Fraction(int(v.value))
    return (0, value, rec.id)


def run_query(store: Store, q: Query) -> tuple[list[GraphRecord], int]:
    """Fold the steps over the full store; returns (page, total count)."""
    if q.sort != "id" and q.sort not in BY_ID:
        raise QueryError(f"unknown sort key {q.sort!r}")
    ids = set(store.ids())
    for step in q.steps:
        ids = apply_restriction(store, ids, step)
    records = sorted((store.get(i) for i in ids), key=lambda r: _sort_key(r, q.sort))
    total = len(records)
    if q.offset:
        records = records[q.offset:]
    if q.limit is not None:
        records = records[:q.limit]
    return records, total


EXPORT_FORMATS = ("graph6", "multicode", "edge-text", "readable")


def export_results(store: Store, q: Query, fmt: str) -> bytes:
    """Encode the full (unpaged) result stream in query order."""
    full = Query(steps=q.steps, sort=q.sort)
    records, _ = run_query(store, full)
    graphs = [r.graph for r in records]
    if fmt == "graph6":
        return codecs.encode_graph6_stream(graphs).encode("ascii")
    if fmt == "multicode":
        return codecs.encode_multicode(graphs)
    if fmt == "edge-text":
        return codecs.encode_edge_text_stream(graphs).encode("ascii")
    if fmt == "readable":
        return "\n".join(codecs.write_readable(r) for r in records).encode()
    raise QueryError(f"unknown export format {fmt!r}")
