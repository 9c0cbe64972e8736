#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Three workloads cover the hot loops: packed RREF canonicalization, the
exhaustive GL(4,2) rank-preserving scan, and the complete backtracking
search for a factoring L-map.  Run after building the extension:

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from qmatroids import lattice, Subspace
from qmatroids.kernels import _pure, available_backends
from qmatroids.repro import _alpha_maps, _factor_fixed_table, blockdiag_matroid


def bench_rref(kern, rng_seed=11, batches=20000):
    rng = random.Random(rng_seed)
    data = [[rng.randrange(1 << 6) for _ in range(6)] for _ in range(batches)]
    t0 = time.perf_counter()
    acc = 0
    for rows in data:
        _, rank = kern.gf2_rref(rows, 6)
        acc += rank
    return time.perf_counter() - t0, acc


def _gl_inputs():
    n = 4
    lat = lattice(2, n)
    N1 = blockdiag_matroid(2, 4, 1)
    N2 = blockdiag_matroid(2, 4, 2)
    rv1, rv2 = N1.rank_vector(), N2.rank_vector()
    order = sorted(range(lat.size),
                   key=lambda i: (0 if rv1[i] < lat.dims[i] else 1,
                                  lat.dims[i], i))
    space_rows = []
    for i in order:
        rows = [sum(b << c for c, b in enumerate(row))
                for row in lat.spaces[i].basis]
        space_rows.extend(rows + [0] * (n - len(rows)))
    dims = [lat.dims[i] for i in order]
    ranks1 = [rv1[i] for i in order]
    by_key = [-1] * (1 << (n * n))
    for i in range(lat.size):
        packed = [sum(b << c for c, b in enumerate(row))
                  for row in lat.spaces[i].basis]
        by_key[_pure.gf2_key(packed, n)] = rv2[i]
    flag = []
    for j in range(1, n + 1):
        rows = tuple(tuple(1 if c == r else 0 for c in range(n))
                     for r in range(j))
        flag.append(rv1[lat.id_of(Subspace(2, n, rows))])
    return n, space_rows, dims, ranks1, by_key, flag


def bench_gl_scan(kern, inputs):
    t0 = time.perf_counter()
    found, leaves, nodes = kern.gl2_iso_search(*inputs, False)
    assert found is None and leaves == 20160
    return time.perf_counter() - t0, leaves


def bench_factor_search(kern, rounds=200):
    a1, a2 = _alpha_maps(2)
    fixed = _factor_fixed_table(2, a1, a2, 3)
    order = [c for c in range(16) if fixed[c] < 0]
    t0 = time.perf_counter()
    total_nodes = 0
    for _ in range(rounds):
        sol, nodes = kern.gf2_factor_search(fixed, 4, order, list(range(8)))
        assert sol is None
        total_nodes += nodes
    return time.perf_counter() - t0, total_nodes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = {"pure": _pure}
    if "fast" in available_backends():
        from qmatroids.kernels import _fast
        backends["fast"] = _fast
    else:
        print("compiled backend not built; benchmarking pure only")

    gl_inputs = _gl_inputs()
    workloads = [
        ("rref 6x6 x20k", lambda k: bench_rref(k)),
        ("GL(4,2) scan", lambda k: bench_gl_scan(k, gl_inputs)),
        ("factor search x200", lambda k: bench_factor_search(k)),
    ]
    results = {}
    for wname, fn in workloads:
        for bname, kern in backends.items():
            best = min(fn(kern)[0] for _ in range(args.repeat))
            results[(wname, bname)] = best

    width = max(len(w) for w, _ in workloads) + 2
    print(f"{'workload':<{width}}" + "".join(f"{b:>12}" for b in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for wname, _ in workloads:
        row = f"{wname:<{width}}"
        for bname in backends:
            row += f"{results[(wname, bname)] * 1e3:>10.2f}ms"
        if len(backends) == 2:
            row += f"{results[(wname, 'pure')] / results[(wname, 'fast')]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
