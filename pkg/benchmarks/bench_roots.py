"""Benchmark the numba and numpy kernels against each other.

Two hot paths have dual backends selected by GDET_BACKEND (or
``groupdet.set_backend``): the simultaneous root iteration behind every
numeric measure, and the vectorized order-8 dihedral value table behind
the desk-scale enumeration.  This script times both on representative
workloads and prints one table.

Run:  python3 benchmarks/bench_roots.py
"""

import random
import time

import numpy as np

from groupdet import heisenberg_infinite_measure, mahler_measure, set_backend
from groupdet.search import _d8_value_table

LEHMER = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]


def bench_measure_batch(reps=40):
    rng = random.Random(7)
    polys = [LEHMER] + [[rng.randint(-3, 3) for _ in range(24)] + [1]
                        for _ in range(reps - 1)]
    t0 = time.perf_counter()
    acc = 0.0
    for c in polys:
        acc += mahler_measure(c)
    return time.perf_counter() - t0, acc


def bench_heisenberg_measure(points=512):
    f0 = {(1, 1): 1, (1, 0): 2, (0, 1): 3, (0, 0): 7}
    fk = {(1, 0): 1, (0, 0): 3}
    t0 = time.perf_counter()
    v = heisenberg_infinite_measure(f0, fk, points=points)
    return time.perf_counter() - t0, v


def bench_d8_table(height=3):
    t0 = time.perf_counter()
    table, _ = _d8_value_table(height)
    return time.perf_counter() - t0, float(np.abs(table).sum(dtype=np.float64))


WORKLOADS = [
    ("root batch (40 polys, deg <= 24)", bench_measure_batch),
    ("heisenberg measure (512 slices)", bench_heisenberg_measure),
    ("dihedral-8 value table (height 3)", bench_d8_table),
]


def main():
    rows = []
    for name, fn in WORKLOADS:
        timings = {}
        checks = {}
        for backend in ("numpy", "numba"):
            set_backend(backend)
            fn()  # warm-up: first numba call includes JIT compilation
            dt, chk = fn()
            timings[backend], checks[backend] = dt, chk
        agree = abs(checks["numpy"] - checks["numba"]) < 1e-6 * (
            1.0 + abs(checks["numpy"]))
        rows.append((name, timings["numpy"], timings["numba"], agree))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'numpy':>9}  {'numba':>9}  "
          f"{'speedup':>7}  agree")
    for name, t_np, t_nb, agree in rows:
        print(f"{name:<{width}}  {t_np:>8.3f}s  {t_nb:>8.3f}s  "
              f"{t_np / t_nb:>6.1f}x  {'yes' if agree else 'NO'}")


if __name__ == "__main__":
    main()
