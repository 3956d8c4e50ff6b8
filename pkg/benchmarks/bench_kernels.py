#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--quick]

Covers the three hot paths: canonical labeling (the dedup bottleneck),
maximum clique, and chromatic number.
"""

import argparse
import random
import time

from hogdb import _bits, _pykern

try:
    from hogdb import _ckern
except ImportError:
    _ckern = None


def random_rows(rng, n):
    code = rng.getrandbits(_bits.pair_count(n)) if n > 1 else 0
    return _bits.rows_from_code(n, code)


def bench(fn, args_list, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return len(args_list) / best


def row(label, pure_rate, compiled_rate):
    speedup = f"{compiled_rate / pure_rate:6.1f}x" if compiled_rate else "    n/a"
    compiled = f"{compiled_rate:>12,.0f}" if compiled_rate else "         n/a"
    print(f"{label:<28} {pure_rate:>12,.0f} {compiled} {speedup}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller samples")
    opts = parser.parse_args()
    scale = 5 if opts.quick else 1

    if _ckern is None:
        print("compiled extension not built; benchmarking pure kernels only")

    rng = random.Random(1234)
    print(f"{'kernel (ops/s)':<28} {'pure':>12} {'compiled':>12} speedup")

    for n, count in ((7, 20000 // scale), (12, 8000 // scale), (20, 2000 // scale)):
        args = [(n, random_rows(rng, n)) for _ in range(count)]
        pure = bench(_pykern.canonicalize, args)
        compiled = bench(_ckern.canonicalize, args) if _ckern else None
        row(f"canonicalize n={n}", pure, compiled)

    for n, count in ((12, 2000 // scale), (20, 400 // scale)):
        args = [(n, random_rows(rng, n), None) for _ in range(count)]
        pure = bench(_pykern.max_clique_size, args)
        compiled = bench(_ckern.max_clique_size, args) if _ckern else None
        row(f"max_clique n={n}", pure, compiled)

    for n, count in ((10, 600 // scale), (14, 200 // scale)):
        args = [(n, random_rows(rng, n), None) for _ in range(count)]
        pure = bench(_pykern.chromatic_number, args)
        compiled = bench(_ckern.chromatic_number, args) if _ckern else None
        row(f"chromatic n={n}", pure, compiled)


if __name__ == "__main__":
    main()
