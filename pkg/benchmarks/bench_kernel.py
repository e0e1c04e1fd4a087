#!/usr/bin/env python3
"""Benchmark the compiled label-correcting kernel against the pure-Python twin.

Builds constraint graphs from random instances of growing size and times
``bellman_ford`` from both backends on identical arrays.  The two must
also agree bit-for-bit on every distance label (checked per run).

Usage: python3 benchmarks/bench_kernel.py [--repeats N] [--seed S]
"""

import argparse
import random
import statistics
import time

from mechpay import build_graph
from mechpay.model import ValuationType, make_instance
from mechpay import _bf_py

try:
    from mechpay import _bf

    BACKENDS = [("pure-python", _bf_py.bellman_ford), ("compiled", _bf.bellman_ford)]
except ImportError:
    _bf = None
    BACKENDS = [("pure-python", _bf_py.bellman_ford)]

# (num agents, types per agent, bundles); arcs grow as profiles * m^2
SIZES = [(3, 3, 4), (4, 3, 4), (4, 4, 4)]
LARGE_SIZES = [(5, 4, 4)]


def random_graph(m, types, n_bundles, rng):
    bundles = [f"b{k}" for k in range(n_bundles)]
    spaces = [
        [
            ValuationType({b: rng.uniform(-2.0, 2.0) for b in bundles})
            for _ in range(types)
        ]
        for _ in range(m)
    ]
    profiles = [()]
    for _ in range(m):
        profiles = [p + (t,) for p in profiles for t in range(types)]
    allocation = {p: tuple(rng.choice(bundles) for _ in range(m)) for p in profiles}
    return build_graph(make_instance(m, bundles, spaces, allocation))


def best_of(fn, args, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument(
        "--large",
        action="store_true",
        help="also time a 5-agent graph (about a minute per pure-python pass)",
    )
    args = parser.parse_args()
    sizes = SIZES + LARGE_SIZES if args.large else SIZES

    if _bf is None:
        print("note: compiled backend unavailable, timing pure-python only\n")

    header = f"{'vertices':>9} {'arcs':>7}"
    for name, _fn in BACKENDS:
        header += f" {name + ' (best)':>19}"
    if _bf is not None:
        header += f" {'speedup':>8}"
    print(header)

    rng = random.Random(args.seed)
    for m, types, n_bundles in sizes:
        g = random_graph(m, types, n_bundles, rng)
        tails, heads, weights = g.arc_arrays("ALL")
        call = (g.vertex_count, tails, heads, weights)
        row = f"{g.vertex_count:>9} {g.num_arcs:>7}"
        bests, results = [], []
        for _name, fn in BACKENDS:
            best, _median, result = best_of(fn, call, args.repeats)
            bests.append(best)
            results.append(result)
            row += f" {best:>17.4f}s"
        if len(results) == 2:
            dist_a, dist_b = results[0][0], results[1][0]
            assert list(dist_a) == list(dist_b), "backends diverged"
            row += f" {bests[0] / bests[1]:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
