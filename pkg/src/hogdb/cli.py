"""Batch operator interface: import/export, convert, search, compute,
cover, serve, seed.

Exit codes are stable for scripting: 0 success, 1 usage error, 2 data
error (malformed input files). Output is deterministic so runs can be
diffed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import codecs, seeds
from .covering import (Conglomerate, CoveringError, greedy_representatives,
                       parse_conglomerate_file)
from .exprlang import ExprError
from .graphs import GraphError
from .invariants import DEFAULT_BUDGET
from .jobs import attach
from .query import (BooleanIs, ExactGraph, ExprSatisfy, InterestingFor,
                    Keyword, Polarity, Query, QueryError, Range,
                    export_results)
from .store import Store

CLI_USER = "cli"

FORMAT_ALIASES = {
    "g6": "graph6", "graph6": "graph6",
    "mc": "multicode", "multicode": "multicode",
    "txt": "edge-text", "edge-text": "edge-text",
    "readable": "readable",
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hog", description="graph catalog operator tool")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_store(p):
        p.add_argument("--store", default="./hog-store",
                       help="store directory (default ./hog-store)")

    p = sub.add_parser("import", help="import graphs from a file")
    p.add_argument("path", help="input file, or a directory with --name-manifest")
    p.add_argument("--format", required=True, choices=["g6", "mc", "txt"])
    p.add_argument("--name-manifest", help="JSON manifest naming the graphs")
    add_store(p)

    p = sub.add_parser("search", help="run restriction steps over the store")
    p.add_argument("--step", action="append", default=[],
                   help="restriction step spec, e.g. range:girth:6:6")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", default="g6", choices=sorted(FORMAT_ALIASES))
    p.add_argument("--sort", default="id")
    add_store(p)

    p = sub.add_parser("convert", help="convert between graph stream formats")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--from", dest="from_fmt", required=True,
                   choices=["g6", "mc", "txt"])
    p.add_argument("--to", dest="to_fmt", required=True,
                   choices=["g6", "mc", "txt"])

    p = sub.add_parser("compute", help="run queued invariant jobs")
    p.add_argument("--drain", action="store_true",
                   help="run until the queue is empty")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET,
                   help="per-job wall clock budget in seconds")
    p.add_argument("--workers", type=int, default=1)
    add_store(p)

    p = sub.add_parser("cover", help="choose conglomerate representatives")
    p.add_argument("file", help="one conglomerate per line: 'label : key1 key2 ...'")
    add_store(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--listen", default="127.0.0.1:8706")
    p.add_argument("--workers", type=int, default=2,
                   help="background invariant workers")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    add_store(p)

    p = sub.add_parser("seed", help="load the bundled seed catalog")
    add_store(p)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    return {
        "import": cmd_import,
        "search": cmd_search,
        "convert": cmd_convert,
        "compute": cmd_compute,
        "cover": cmd_cover,
        "serve": cmd_serve,
        "seed": cmd_seed,
    }[args.command](args)


def _open_store(args) -> Store:
    store = Store(args.store)
    if CLI_USER not in store._users:
        store.register_user(CLI_USER)
    return store


def _read_graphs(path: Path, fmt: str):
    try:
        if fmt == "g6":
            return codecs.decode_graph6_stream(path.read_text())
        if fmt == "mc":
            return codecs.decode_multicode(path.read_bytes())
        return codecs.decode_edge_text_stream(path.read_text())
    except (codecs.CodecError, GraphError) as exc:
        raise DataError(f"{path}: {exc}")
    except OSError as exc:
        raise DataError(str(exc))


def cmd_import(args) -> int:
    store = _open_store(args)
    path = Path(args.path)
    entries = []  # (graph, name, provenance, interesting_for)
    if args.name_manifest:
        base = Path(args.name_manifest).parent
        try:
            manifest = json.loads(Path(args.name_manifest).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"manifest: {exc}")
        root = path if path.is_dir() else base
        for item in manifest:
            for g in _read_graphs(root / item["file"], args.format):
                entries.append((g, item.get("name"), item.get("provenance"),
                                item.get("interesting_for", [])))
    else:
        if path.is_dir():
            raise UsageError("importing a directory requires --name-manifest")
        for g in _read_graphs(path, args.format):
            entries.append((g, None, None, []))
    for g, name, prov, marks in entries:
        rid, created = store.insert_graph(g, user=CLI_USER, name=name,
                                          provenance=prov, interesting_for=marks)
        print(f"stored id {rid}" if created else f"duplicate of {rid}")
    return 0


def parse_step(spec: str):
    kind, _, rest = spec.partition(":")
    try:
        if kind == "keyword":
            if not rest:
                raise UsageError(f"empty keyword in step {spec!r}")
            return Keyword(rest)
        if kind == "range":
            parts = rest.split(":")
            if len(parts) != 3:
                raise UsageError(f"range step needs invariant:low:high, got {spec!r}")
            inv, low, high = parts
            from fractions import Fraction
            return Range(inv, Fraction(low) if low else None,
                         Fraction(high) if high else None)
        if kind == "bool":
            inv, _, value = rest.partition(":")
            if value not in ("true", "false"):
                raise UsageError(f"bool step needs true or false, got {spec!r}")
            return BooleanIs(inv, value == "true")
        if kind == "interesting":
            return InterestingFor(rest)
        if kind == "expr":
            return ExprSatisfy.parse(rest, Polarity.SATISFY)
        if kind == "notexpr":
            return ExprSatisfy.parse(rest, Polarity.NOT_SATISFY)
        if kind == "exact":
            return ExactGraph.of(codecs.decode_graph6(rest))
    except (QueryError, ExprError, codecs.CodecError, ValueError) as exc:
        raise UsageError(f"bad step {spec!r}: {exc}")
    raise UsageError(f"unknown step kind {kind!r} in {spec!r}")


def cmd_search(args) -> int:
    store = _open_store(args)
    q = Query(steps=[parse_step(s) for s in args.step], sort=args.sort)
    try:
        data = export_results(store, q, FORMAT_ALIASES[args.format])
    except QueryError as exc:
        raise UsageError(str(exc))
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return 0


def cmd_convert(args) -> int:
    graphs = _read_graphs(Path(args.infile), args.from_fmt)
    fmt = FORMAT_ALIASES[args.to_fmt]
    try:
        if fmt == "graph6":
            data = codecs.encode_graph6_stream(graphs).encode("ascii")
        elif fmt == "multicode":
            data = codecs.encode_multicode(graphs)
        else:
            data = codecs.encode_edge_text_stream(graphs).encode("ascii")
    except codecs.CodecError as exc:
        raise DataError(str(exc))
    Path(args.outfile).write_bytes(data)
    return 0


def cmd_compute(args) -> int:
    store = _open_store(args)
    queue = attach(store, default_budget=args.budget)
    queued = queue.enqueue_pending()
    if not args.drain:
        print(f"queued {queued} jobs")
        return 0
    executed = queue.drain(workers=max(1, args.workers))
    counts = queue.counts()
    print(f"executed {executed} jobs "
          f"(done {counts['DONE']}, timed out {counts['TIMED_OUT']})")
    return 0


def cmd_cover(args) -> int:
    store = _open_store(args)
    try:
        parsed = parse_conglomerate_file(Path(args.file).read_text())
    except (OSError, CoveringError) as exc:
        raise DataError(str(exc))
    conglomerates = []
    key_of = {}
    for label, keys in parsed:
        members = set()
        for key in keys:
            rec = store.lookup_by_canonical(key)
            if rec is None:
                raise DataError(f"conglomerate {label!r}: no stored graph with key {key}")
            members.add(rec.id)
            key_of[rec.id] = rec.canonical_key
        conglomerates.append(Conglomerate(label, frozenset(members)))
    try:
        reps, assignment = greedy_representatives(conglomerates, key_of)
    except CoveringError as exc:
        raise DataError(str(exc))
    by_rep: dict[int, list[str]] = {}
    for label, rid in assignment.items():
        by_rep.setdefault(rid, []).append(label)
    for rid in sorted(by_rep):
        print(f"{rid}: {' '.join(sorted(by_rep[rid]))}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    store = _open_store(args)
    queue = attach(store, default_budget=args.budget)
    app = create_app(store, queue, workers=args.workers)
    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        raise UsageError(f"--listen must be host:port, got {args.listen!r}")
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return 0


def cmd_seed(args) -> int:
    store = _open_store(args)
    for rid, created in seeds.load_seed_catalog(store):
        print(f"stored id {rid}" if created else f"duplicate of {rid}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
