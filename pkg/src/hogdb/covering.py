"""Greedy set-cover selection of conglomerate representatives.

Each conglomerate (a set of graph ids sharing one extremal point) must
be represented by one of its members; the greedy rule repeatedly picks
the graph covering the most still-uncovered conglomerates. Ties break
on the smallest canonical key, then the smallest id, which makes the
result independent of input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence


class CoveringError(ValueError):
    pass


@dataclass(frozen=True)
class Conglomerate:
    label: str
    members: frozenset[int]

    def __post_init__(self):
        if not self.members:
            raise CoveringError(f"conglomerate {self.label!r} has no members")


def greedy_representatives(
    conglomerates: Sequence[Conglomerate],
    key_of: Mapping[int, str],
) -> tuple[set[int], dict[str, int]]:
    """(representatives, label -> assigned member id).

    key_of must map every member id to its canonical key (it is the
    deterministic tie-break); unknown ids are rejected.
    """
    labels = [c.label for c in conglomerates]
    if len(set(labels)) != len(labels):
        raise CoveringError("conglomerate labels must be unique")
    membership: dict[int, set[str]] = {}
    for c in conglomerates:
        for gid in c.members:
            if gid not in key_of:
                raise CoveringError(f"unknown graph id {gid} in conglomerate {c.label!r}")
            membership.setdefault(gid, set()).add(c.label)

    uncovered = set(labels)
    representatives: set[int] = set()
    assignment: dict[str, int] = {}
    while uncovered:
        best = None
        for gid, covers in membership.items():
            gain = len(covers & uncovered)
            if gain == 0:
                continue
            rank = (-gain, key_of[gid], gid)
            if best is None or rank < best[0]:
                best = (rank, gid)
        gid = best[1]
        representatives.add(gid)
        for label in sorted(membership[gid] & uncovered):
            assignment[label] = gid
        uncovered -= membership[gid]
    return representatives, assignment


def verify_cover(
    conglomerates: Sequence[Conglomerate],
    representatives: set[int],
) -> tuple[bool, str | None]:
    """Certificate check: (ok, first uncovered label in input order)."""
    for c in conglomerates:
        if not (c.members & representatives):
            return False, c.label
    return True, None


def parse_conglomerate_file(text: str) -> list[tuple[str, list[str]]]:
    """One conglomerate per line: "label : key1 key2 ..." (keys are
    canonical graph6 keys; '#' starts a comment)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise CoveringError(f"missing ':' on line {lineno}")
        label, _, keys = line.partition(":")
        label = label.strip()
        members = keys.split()
        if not label:
            raise CoveringError(f"empty label on line {lineno}")
        if not members:
            raise CoveringError(f"conglomerate {label!r} has no members (line {lineno})")
        out.append((label, members))
    return out
