"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from bispace import catalog, kernels
from bispace.actions import conjugation_action_I, conjugation_action_II
from bispace.groups import subgroup_generated


def workloads():
    S4 = catalog.get("S4")
    whole = conjugation_action_II(S4.whole)
    small = conjugation_action_I(subgroup_generated(S4, [S4.index("(12)")]))
    T, M = whole.table, whole.group_table
    Ts = small.table
    n = len(small.carrier.points)
    ks = np.arange(Ts.shape[0], dtype=np.int32)

    def layers():
        # semi-naive closure from every point
        for x in range(n):
            mask = np.zeros(n, dtype=np.uint8)
            mask[x] = 1
            delta = np.array([x], dtype=np.int32)
            while len(delta):
                new = np.asarray(kernels.expand(Ts, mask, delta, ks), dtype=np.int32)
                mask[new] = 1
                delta = new

    return {
        "distributive scan, S4 acting on itself (8M quintuples)": lambda: kernels.distributive_scan(T),
        "axiom scan, S4 acting on itself": lambda: kernels.axiom_scan(T, M, S4.identity, 0),
        "orbit layers from all 24 points": layers,
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = sorted(kernels.BACKENDS)
    if "cython" not in backends:
        print("compiled extension not built; timing the fallback only")
    jobs = workloads()
    print(f"{'workload':<58}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in jobs.items():
        row = {}
        for b in backends:
            kernels.use_backend(b)
            row[b] = best_of(fn, args.repeat)
        speed = f"{row['python'] / row['cython']:>9.1f}x" if "cython" in row else ""
        print(f"{name:<58}" + "".join(f"{row[b]:>11.4f}s" for b in backends) + speed)


if __name__ == "__main__":
    main()
