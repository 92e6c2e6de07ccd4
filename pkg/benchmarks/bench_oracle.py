"""Time the JIT and plain-numpy breadth-first kernels against each other.

Both kernels sweep the full n! permutation space of a transposition tree,
so runtimes grow factorially; n=9 (362880 states) is a comfortable default
and n=10 still finishes in seconds.  The script asserts that the two
backends produce identical depth tables before reporting timings.

Usage:
    python3 benchmarks/bench_oracle.py --n 9 --repeat 3
"""

from __future__ import annotations

import argparse
import math
import statistics
import time

import numpy as np

from treebound import _bfs_kernels as kern
from treebound import tree as tr


def _edge_array(t: tr.Tree) -> np.ndarray:
    return np.array([(min(u, v) - 1, max(u, v) - 1) for u, v in t.label_edges()],
                    dtype=np.int64)


def _time(fn, n, edges, repeat: int) -> tuple[float, np.ndarray]:
    best = float("inf")
    table = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        table = fn(n, edges)
        best = min(best, time.perf_counter() - t0)
    return best, table


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=9, help="vertices per tree (<= 10)")
    ap.add_argument("--repeat", type=int, default=3, help="timed runs, best-of")
    args = ap.parse_args(argv)
    if not 2 <= args.n <= 10:
        ap.error("--n must be between 2 and 10")

    cases = [("star", tr.make_star(args.n)), ("path", tr.make_path(args.n))]
    if args.n >= 6 and args.n % 2 == 0:
        cases.append(("caterpillar", tr.make_matchstick(args.n // 2)))
    elif args.n >= 5:
        cases.append(("spider", tr.make_spider(2, (args.n - 1) // 2)))

    if not kern.HAS_NUMBA:
        print("numba unavailable: timing the numpy backend only")

    print(f"n={args.n} states={math.factorial(args.n)} best-of-{args.repeat}")
    print(f"{'tree':<12} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    speedups = []
    for name, t in cases:
        edges = _edge_array(t)
        np_time, np_table = _time(kern.bfs_numpy, args.n, edges, args.repeat)
        if kern.HAS_NUMBA:
            # warm the JIT cache outside the timed region
            kern.bfs_numba(args.n, edges)
            nb_time, nb_table = _time(kern.bfs_numba, args.n, edges, args.repeat)
            assert np.array_equal(np_table, nb_table), f"backend disagreement on {name}"
            speedups.append(np_time / nb_time)
            print(f"{name:<12} {np_time:>9.3f}s {nb_time:>9.3f}s {np_time / nb_time:>7.1f}x")
        else:
            print(f"{name:<12} {np_time:>9.3f}s {'-':>10} {'-':>8}")

    if speedups:
        print(f"median speedup: {statistics.median(speedups):.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
