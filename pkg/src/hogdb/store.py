"""Persistent graph catalog with isomorphism deduplication.

Records are keyed by canonical graph6 key, so inserting any relabeling
of a stored graph returns the existing record. The stored Graph is the
canonically relabeled copy; embeddings are permuted into that labeling
on insert. Only the owner may change a record's basic metadata; anyone
authenticated may comment.

On-disk layout (docs/STORAGE.md): a directory with meta.json plus
append-only JSONL files for records and users, last line per id wins.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

from . import codecs
from .graphs import Graph, canonical_graph
from .invariants import (BY_ID, Kind, PENDING, REGISTRY, Status, InvariantValue)

SCHEMA_VERSION = 1


class StoreError(Exception):
    pass


class NotFoundError(StoreError):
    pass


class NotOwnerError(StoreError):
    pass


class UnauthenticatedError(StoreError):
    pass


@dataclass
class User:
    id: int
    login: str
    token_sha256: str


@dataclass
class Comment:
    user: str
    at: str  # ISO-8601 UTC
    text: str


@dataclass
class GraphRecord:
    id: int
    canonical_key: str
    graph: Graph  # canonical labeling
    owner: str
    name: str | None = None
    provenance: str | None = None
    interesting_for: set[str] = field(default_factory=set)
    comments: list[Comment] = field(default_factory=list)
    invariant_values: dict[str, InvariantValue] = field(default_factory=dict)
    embedding: list[tuple[float, float]] = field(default_factory=list)

    def searchable_text(self) -> str:
        parts = [self.name or "", self.provenance or ""]
        parts += [c.text for c in self.comments]
        return "\n".join(parts)


def default_embedding(g: Graph) -> list[tuple[float, float]]:
    """Deterministic circular layout: vertex k at angle 2*pi*k/n."""
    if g.n == 0:
        return []
    return [(math.cos(2 * math.pi * k / g.n), math.sin(2 * math.pi * k / g.n))
            for k in range(g.n)]


def _now_iso() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


class Store:
    """Thread-safe catalog; pass a directory path for persistence or
    None for a purely in-memory store."""

    def __init__(self, path: str | Path | None = None):
        self._lock = threading.RLock()
        self._records: dict[int, GraphRecord] = {}
        self._by_key: dict[str, int] = {}
        self._users: dict[str, User] = {}
        self._users_by_token: dict[str, User] = {}
        self._next_id = 1
        self._next_user_id = 1
        self.on_insert: Callable[[GraphRecord], None] | None = None
        self._path = Path(path) if path is not None else None
        if self._path is not None:
            self._load()

    # -- users ---------------------------------------------------------------

    def register_user(self, login: str) -> tuple[User, str]:
        login = login.strip()
        if not login:
            raise StoreError("login must not be empty")
        with self._lock:
            if login in self._users:
                raise StoreError(f"login {login!r} already taken")
            token = secrets.token_hex(16)
            user = User(self._next_user_id, login, _sha256(token))
            self._next_user_id += 1
            self._users[login] = user
            self._users_by_token[user.token_sha256] = user
            self._persist_user(user)
            self._persist_meta()
            return user, token

    def authenticate(self, token: str) -> User | None:
        return self._users_by_token.get(_sha256(token))

    def _require_user(self, login: str) -> User:
        user = self._users.get(login)
        if user is None:
            raise UnauthenticatedError(f"unknown user {login!r}")
        return user

    # -- records ---------------------------------------------------------------

    def insert_graph(self, g: Graph, *, user: str, name: str | None = None,
                     provenance: str | None = None,
                     interesting_for: Iterable[str] = (),
                     embedding: list[tuple[float, float]] | None = None,
                     ) -> tuple[int, bool]:
        """Store g up to isomorphism.

        Returns (id, created). When an isomorphic copy already exists its
        id is returned and the stored metadata is left untouched.
        """
        marks = set(interesting_for)
        for inv in marks:
            if inv not in BY_ID:
                raise StoreError(f"unknown invariant {inv!r} in interesting_for")
        if embedding is not None and len(embedding) != g.n:
            raise StoreError(
                f"embedding has {len(embedding)} points for {g.n} vertices")
        with self._lock:
            self._require_user(user)
            cg, perm, key = canonical_graph(g)
            existing = self._by_key.get(key)
            if existing is not None:
                return existing, False
            if embedding is None:
                emb = default_embedding(cg)
            else:
                emb = [(0.0, 0.0)] * g.n
                for v in range(g.n):
                    emb[perm(v)] = (float(embedding[v][0]), float(embedding[v][1]))
            rec = GraphRecord(
                id=self._next_id, canonical_key=key, graph=cg, owner=user,
                name=name, provenance=provenance, interesting_for=marks,
                invariant_values={inv.id: PENDING for inv in REGISTRY},
                embedding=emb,
            )
            self._next_id += 1
            self._records[rec.id] = rec
            self._by_key[key] = rec.id
            self._persist_record(rec)
            self._persist_meta()
            if self.on_insert is not None:
                self.on_insert(rec)
            return rec.id, True

    def get(self, record_id: int) -> GraphRecord:
        rec = self._records.get(record_id)
        if rec is None:
            raise NotFoundError(f"no graph with id {record_id}")
        return rec

    def lookup_by_canonical(self, key: str) -> GraphRecord | None:
        rid = self._by_key.get(key)
        return self._records[rid] if rid is not None else None

    def update_metadata(self, record_id: int, fields: dict, user: str) -> GraphRecord:
        """Owner-only changes to name/provenance/interesting_for/embedding."""
        allowed = {"name", "provenance", "interesting_for", "embedding"}
        bad = set(fields) - allowed
        if bad:
            raise StoreError(f"unknown metadata fields {sorted(bad)}")
        with self._lock:
            self._require_user(user)
            rec = self.get(record_id)
            if rec.owner != user:
                raise NotOwnerError(
                    f"user {user!r} does not own graph {record_id}")
            if "interesting_for" in fields:
                marks = set(fields["interesting_for"])
                for inv in marks:
                    if inv not in BY_ID:
                        raise StoreError(f"unknown invariant {inv!r}")
                rec.interesting_for = marks
            if "embedding" in fields:
                emb = fields["embedding"]
                if len(emb) != rec.graph.n:
                    raise StoreError(
                        f"embedding has {len(emb)} points for {rec.graph.n} vertices")
                rec.embedding = [(float(x), float(y)) for x, y in emb]
            if "name" in fields:
                rec.name = fields["name"]
            if "provenance" in fields:
                rec.provenance = fields["provenance"]
            self._persist_record(rec)
            return rec

    def add_comment(self, record_id: int, text: str, user: str) -> GraphRecord:
        if not text or not text.strip():
            raise StoreError("comment text must not be empty")
        with self._lock:
            self._require_user(user)
            rec = self.get(record_id)
            rec.comments.append(Comment(user=user, at=_now_iso(), text=text))
            self._persist_record(rec)
            return rec

    def set_invariant_value(self, record_id: int, inv_id: str,
                            value: InvariantValue) -> None:
        if inv_id not in BY_ID:
            raise StoreError(f"unknown invariant {inv_id!r}")
        with self._lock:
            rec = self.get(record_id)
            rec.invariant_values[inv_id] = value
            self._persist_record(rec)

    # -- iteration -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._records)

    def ids(self) -> list[int]:
        return sorted(self._records)

    def records(self) -> list[GraphRecord]:
        return [self._records[i] for i in self.ids()]

    # -- persistence -----------------------------------------------------------

    def _load(self) -> None:
        self._path.mkdir(parents=True, exist_ok=True)
        meta = self._path / "meta.json"
        if meta.exists():
            doc = json.loads(meta.read_text())
            if doc.get("schema") != SCHEMA_VERSION:
                raise StoreError(f"unsupported store schema {doc.get('schema')}")
            self._next_id = doc["next_id"]
            self._next_user_id = doc["next_user_id"]
        users = self._path / "users.jsonl"
        if users.exists():
            for line in users.read_text().splitlines():
                if not line.strip():
                    continue
                doc = json.loads(line)
                user = User(doc["id"], doc["login"], doc["token_sha256"])
                self._users[user.login] = user
                self._users_by_token[user.token_sha256] = user
        records = self._path / "records.jsonl"
        if records.exists():
            for line in records.read_text().splitlines():
                if not line.strip():
                    continue
                rec = record_from_doc(json.loads(line))
                self._records[rec.id] = rec
                self._by_key[rec.canonical_key] = rec.id

    def _persist_record(self, rec: GraphRecord) -> None:
        if self._path is None:
            return
        with open(self._path / "records.jsonl", "a") as fh:
            fh.write(json.dumps(record_to_doc(rec), sort_keys=True) + "\n")

    def _persist_user(self, user: User) -> None:
        if self._path is None:
            return
        with open(self._path / "users.jsonl", "a") as fh:
            fh.write(json.dumps({"id": user.id, "login": user.login,
                                 "token_sha256": user.token_sha256}) + "\n")

    def _persist_meta(self) -> None:
        if self._path is None:
            return
        tmp = self._path / "meta.json.tmp"
        tmp.write_text(json.dumps({"schema": SCHEMA_VERSION,
                                   "next_id": self._next_id,
                                   "next_user_id": self._next_user_id}))
        os.replace(tmp, self._path / "meta.json")

    def compact(self) -> None:
        """Rewrite records.jsonl with one line per live record."""
        if self._path is None:
            return
        with self._lock:
            tmp = self._path / "records.jsonl.tmp"
            with open(tmp, "w") as fh:
                for rec in self.records():
                    fh.write(json.dumps(record_to_doc(rec), sort_keys=True) + "\n")
            os.replace(tmp, self._path / "records.jsonl")


def _sha256(token: str) -> str:
    return hashlib.sha256(token.encode()).hexdigest()


# -- record (de)serialization ---------------------------------------------------

def value_to_doc(v: InvariantValue) -> dict:
    if v.status is not Status.COMPUTED:
        return {"status": v.status.value}
    if v.kind is Kind.UNDEFINED:
        return {"status": "COMPUTED", "kind": "UNDEFINED"}
    if v.kind is Kind.BOOLEAN:
        return {"status": "COMPUTED", "kind": "BOOLEAN", "value": bool(v.value)}
    return {"status": "COMPUTED", "kind": "RATIONAL",
            "num": v.value.numerator, "den": v.value.denominator}


def value_from_doc(doc: dict) -> InvariantValue:
    status = Status(doc["status"])
    if status is not Status.COMPUTED:
        return InvariantValue(Kind.RATIONAL, None, status)
    kind = Kind(doc["kind"])
    if kind is Kind.UNDEFINED:
        return InvariantValue(Kind.UNDEFINED, None, Status.COMPUTED)
    if kind is Kind.BOOLEAN:
        return InvariantValue(Kind.BOOLEAN, doc["value"], Status.COMPUTED)
    return InvariantValue(Kind.RATIONAL, Fraction(doc["num"], doc["den"]),
                          Status.COMPUTED)


def record_to_doc(rec: GraphRecord) -> dict:
    return {
        "id": rec.id,
        "key": rec.canonical_key,
        "owner": rec.owner,
        "name": rec.name,
        "provenance": rec.provenance,
        "interesting_for": sorted(rec.interesting_for),
        "comments": [{"user": c.user, "at": c.at, "text": c.text}
                     for c in rec.comments],
        "embedding": [[x, y] for x, y in rec.embedding],
        "invariants": {inv_id: value_to_doc(v)
                       for inv_id, v in sorted(rec.invariant_values.items())},
    }


def record_from_doc(doc: dict) -> GraphRecord:
    graph = codecs.decode_graph6(doc["key"])
    return GraphRecord(
        id=doc["id"],
        canonical_key=doc["key"],
        graph=graph,
        owner=doc["owner"],
        name=doc["name"],
        provenance=doc["provenance"],
        interesting_for=set(doc["interesting_for"]),
        comments=[Comment(c["user"], c["at"], c["text"]) for c in doc["comments"]],
        embedding=[(p[0], p[1]) for p in doc["embedding"]],
        invariant_values={k: value_from_doc(v)
                          for k, v in doc["invariants"].items()},
    )
