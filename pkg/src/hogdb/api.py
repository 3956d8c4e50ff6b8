"""HTTP JSON interface: submission, search, metadata, downloads, queue.

Every endpoint is a thin delegate to store/query/jobs with the same
contracts; every non-success response carries exactly one error object
{"error": {"code", "message", "offset"?}} with one of the five codes
BAD_FORMAT, NOT_FOUND, NOT_OWNER, UNAUTHENTICATED, BAD_QUERY. Schemas
and examples live in docs/API.md.
"""

from __future__ import annotations

import base64
import binascii
import threading
from contextlib import asynccontextmanager
from fractions import Fraction

from fastapi import Depends, FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import codecs, exprlang, query as queries
from .exprlang import ExprError
from .graphs import Graph, GraphError, graph_from_edges
from .invariants import BY_ID, REGISTRY
from .jobs import JobQueue, attach
from .query import (BooleanIs, ExactGraph, ExprSatisfy, InterestingFor,
                    Keyword, Polarity, Query, QueryError, Range)
from .store import (GraphRecord, NotFoundError, NotOwnerError, Store,
                    StoreError, User, value_to_doc)

SUBMIT_FORMATS = ("graph6", "multicode", "edge-text", "drawn")


class ApiError(Exception):
    def __init__(self, code: str, message: str, status: int,
                 offset: int | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = status
        self.offset = offset

    def response(self) -> JSONResponse:
        err: dict = {"code": self.code, "message": self.message}
        if self.offset is not None:
            err["offset"] = self.offset
        return JSONResponse(status_code=self.status, content={"error": err})


def bad_format(message: str, offset: int | None = None) -> ApiError:
    return ApiError("BAD_FORMAT", message, 400, offset)


def bad_query(message: str, offset: int | None = None) -> ApiError:
    return ApiError("BAD_QUERY", message, 400, offset)


def create_app(store: Store, queue: JobQueue | None = None,
               workers: int = 0) -> FastAPI:
    """Build the service around an existing store (and optional queue).

    With workers > 0, that many background threads keep draining the
    queue while the app runs.
    """
    if queue is None:
        queue = attach(store)

    stop = threading.Event()

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        queue.enqueue_pending()
        for _ in range(workers):
            threading.Thread(target=_worker_loop, args=(queue, stop),
                             daemon=True).start()
        yield
        stop.set()

    app = FastAPI(title="graph catalog", docs_url=None, redoc_url=None,
                  lifespan=lifespan)
    app.state.store = store
    app.state.queue = queue
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ApiError)
    async def on_api_error(_request: Request, exc: ApiError):
        return exc.response()

    def current_user(request: Request) -> User:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            raise ApiError("UNAUTHENTICATED", "missing bearer token", 401)
        user = store.authenticate(header[7:].strip())
        if user is None:
            raise ApiError("UNAUTHENTICATED", "invalid token", 401)
        return user

    # -- users -----------------------------------------------------------------

    @app.post("/api/users/register")
    async def register(body: dict):
        login = body.get("login", "")
        try:
            _user, token = store.register_user(login)
        except StoreError as exc:
            raise bad_query(str(exc))
        return {"login": login.strip(), "token": token}

    # -- graphs ----------------------------------------------------------------

    @app.post("/api/graphs")
    async def submit(body: dict, user: User = Depends(current_user)):
        g, embedding = _decode_submission(body)
        try:
            rid, created = store.insert_graph(
                g, user=user.login, name=body.get("name"),
                provenance=body.get("provenance"),
                interesting_for=body.get("interesting_for", ()),
                embedding=embedding)
        except StoreError as exc:
            raise bad_format(str(exc))
        return {"id": rid, "created": created}

    @app.get("/api/graphs/{graph_id}")
    async def get_graph(graph_id: int):
        return record_view(_get(graph_id))

    @app.patch("/api/graphs/{graph_id}")
    async def patch_graph(graph_id: int, body: dict,
                          user: User = Depends(current_user)):
        try:
            rec = store.update_metadata(graph_id, body, user.login)
        except NotOwnerError as exc:
            raise ApiError("NOT_OWNER", str(exc), 403)
        except NotFoundError as exc:
            raise ApiError("NOT_FOUND", str(exc), 404)
        except StoreError as exc:
            raise bad_query(str(exc))
        return record_view(rec)

    @app.post("/api/graphs/{graph_id}/comments")
    async def comment(graph_id: int, body: dict,
                      user: User = Depends(current_user)):
        try:
            rec = store.add_comment(graph_id, body.get("text", ""), user.login)
        except NotFoundError as exc:
            raise ApiError("NOT_FOUND", str(exc), 404)
        except StoreError as exc:
            raise bad_query(str(exc))
        return record_view(rec)

    @app.get("/api/graphs/{graph_id}/download")
    async def download(graph_id: int, format: str = "graph6"):
        rec = _get(graph_id)
        return _stream_response(store, Query(steps=[ExactGraph(rec.canonical_key)]),
                                format)

    # -- registry & queue --------------------------------------------------------

    @app.get("/api/invariants")
    async def invariants_view():
        return [{"id": inv.id, "display": inv.display,
                 "kind": inv.kind.value, "cost": inv.cost.value}
                for inv in REGISTRY]

    @app.get("/api/jobs")
    async def jobs_view():
        return queue.counts()

    # -- search -------------------------------------------------------------------

    @app.post("/api/search")
    async def search(body: dict):
        q = _parse_query(body)
        fmt = body.get("format")
        if fmt:
            return _stream_response(store, q, fmt)
        try:
            records, total = queries.run_query(store, q)
        except QueryError as exc:
            raise bad_query(str(exc))
        return {"total": total,
                "offset": q.offset,
                "results": [record_summary(r) for r in records]}

    def _get(graph_id: int) -> GraphRecord:
        try:
            return store.get(graph_id)
        except NotFoundError as exc:
            raise ApiError("NOT_FOUND", str(exc), 404)

    return app


def _worker_loop(queue: JobQueue, stop: threading.Event):
    while not stop.is_set():
        if queue.worker_step() is None:
            stop.wait(0.05)


# -- wire formats ---------------------------------------------------------------

def rational_doc(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def record_summary(rec: GraphRecord) -> dict:
    return {
        "id": rec.id,
        "key": rec.canonical_key,
        "name": rec.name,
        "n": rec.graph.n,
        "m": rec.graph.m,
    }


def record_view(rec: GraphRecord) -> dict:
    return {
        **record_summary(rec),
        "owner": rec.owner,
        "provenance": rec.provenance,
        "interesting_for": sorted(rec.interesting_for),
        "comments": [{"user": c.user, "at": c.at, "text": c.text}
                     for c in rec.comments],
        "embedding": [[x, y] for x, y in rec.embedding],
        "edges": rec.graph.edges(),
        "invariants": {inv_id: value_to_doc(v)
                       for inv_id, v in sorted(rec.invariant_values.items())},
    }


def _decode_submission(body: dict) -> tuple[Graph, list | None]:
    fmt = body.get("format")
    payload = body.get("payload")
    if fmt not in SUBMIT_FORMATS:
        raise bad_format(f"format must be one of {', '.join(SUBMIT_FORMATS)}")
    if payload is None:
        raise bad_format("missing payload")
    try:
        if fmt == "graph6":
            graphs = codecs.decode_graph6_stream(str(payload))
        elif fmt == "multicode":
            try:
                raw = base64.b64decode(str(payload), validate=True)
            except (binascii.Error, ValueError):
                raise codecs.CodecError("multicode payload must be base64")
            graphs = codecs.decode_multicode(raw)
        elif fmt == "edge-text":
            graphs = [codecs.parse_edge_text(str(payload))]
        else:  # drawn: explicit vertices + edges from the editor
            graphs, embedding = _decode_drawn(payload)
            return graphs, embedding
    except codecs.CodecError as exc:
        raise bad_format(str(exc), exc.offset)
    except GraphError as exc:
        raise bad_format(str(exc))
    if len(graphs) != 1:
        raise bad_format(f"expected exactly one graph, got {len(graphs)}")
    embedding = body.get("embedding")
    return graphs[0], embedding


def _decode_drawn(payload) -> tuple[Graph, list]:
    if not isinstance(payload, dict):
        raise bad_format("drawn payload must be an object with vertices and edges")
    vertices = payload.get("vertices")
    edges = payload.get("edges")
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise bad_format("drawn payload must carry vertices and edges lists")
    try:
        coords = [(float(p[0]), float(p[1])) for p in vertices]
        g = graph_from_edges(len(coords), [(int(u), int(v)) for u, v in edges])
    except (GraphError, TypeError, ValueError, IndexError) as exc:
        raise bad_format(f"bad drawn graph: {exc}")
    return g, coords


_STEP_PARSERS = {
    "keyword": lambda d: Keyword(str(d["text"])),
    "range": lambda d: Range(d["invariant"], _bound(d.get("low")),
                             _bound(d.get("high")),
                             bool(d.get("inclusive", True))),
    "interesting": lambda d: InterestingFor(d["invariant"]),
    "expr": lambda d: ExprSatisfy(
        exprlang.parse_expression(str(d["text"])),
        Polarity.NOT_SATISFY if d.get("polarity") == "not_satisfy"
        else Polarity.SATISFY),
    "exact": lambda d: _exact_step(d),
    "bool": lambda d: BooleanIs(d["invariant"], bool(d["value"])),
}


def _bound(x) -> Fraction | None:
    if x is None:
        return None
    if isinstance(x, dict):
        return Fraction(x["num"], x["den"])
    if isinstance(x, bool):
        raise QueryError("range bounds must be numbers")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        raise QueryError("range bounds must be exact: use int, string, or num/den")
    raise QueryError(f"bad range bound {x!r}")


def _exact_step(d: dict) -> ExactGraph:
    if "key" in d:
        return ExactGraph(str(d["key"]))
    g = codecs.decode_graph6(str(d["graph6"]))
    return ExactGraph.of(g)


def _parse_query(body: dict) -> Query:
    steps = []
    for i, doc in enumerate(body.get("steps", [])):
        kind = doc.get("kind")
        parser = _STEP_PARSERS.get(kind)
        if parser is None:
            raise bad_query(f"unknown step kind {kind!r} (step {i})")
        try:
            steps.append(parser(doc))
        except (QueryError, ExprError, codecs.CodecError, KeyError,
                ValueError, TypeError) as exc:
            offset = getattr(exc, "offset", None)
            raise bad_query(f"bad step {i}: {exc}", offset)
    page = body.get("page", {})
    try:
        q = Query(steps=steps, sort=body.get("sort", "id"),
                  offset=int(page.get("offset", 0)),
                  limit=None if page.get("limit") is None else int(page["limit"]))
    except (ValueError, TypeError) as exc:
        raise bad_query(str(exc))
    if q.sort != "id" and q.sort not in BY_ID:
        raise bad_query(f"unknown sort key {q.sort!r}")
    return q


_MEDIA = {
    "graph6": "text/plain; charset=us-ascii",
    "edge-text": "text/plain; charset=us-ascii",
    "readable": "text/plain; charset=utf-8",
    "multicode": "application/octet-stream",
}


def _stream_response(store: Store, q: Query, fmt: str) -> Response:
    if fmt not in queries.EXPORT_FORMATS:
        raise bad_query(f"unknown download format {fmt!r}")
    try:
        data = queries.export_results(store, q, fmt)
    except QueryError as exc:
        raise bad_query(str(exc))
    return Response(content=data, media_type=_MEDIA[fmt])
