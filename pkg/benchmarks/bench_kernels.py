#!/usr/bin/env python3
"""Time the integer kernels on both backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs once untimed (numba compiles on first call), then the best
of N runs is reported.  Results are also checked for equality across the
two backends, since a fast wrong answer is worth nothing.
"""
import argparse
import time

import numpy as np

from bundlelift import _kernels
from bundlelift.manifolds import CP2, CP2_MINUS_CP2, S2xS2

CASES = [
    ("class_search S2xS2 miss", lambda: _kernels.class_search(S2xS2.form, (0, 0), 4, 400)),
    ("class_search CP2-CP2 hit", lambda: _kernels.class_search(CP2_MINUS_CP2.form, (1, 0), 9999, 5000)),
    ("square_values CP2-CP2 b=300", lambda: _kernels.square_values(CP2_MINUS_CP2.form, (0, 0), 300)),
    ("residue_mask S2xS2 b=200", lambda: _kernels.residue_mask(S2xS2.form, (0, 0), 16, 200)),
    ("cp2_so3_witness p1=-1000", lambda: _kernels.cp2_so3_witness(-1000, True, 2006)),
    ("cp2_so3_image b=400", lambda: _kernels.cp2_so3_image(400)),
    ("count_parallelepiped 3x3", lambda: _kernels.count_parallelepiped([[7, 2, -3], [1, 9, 4], [-2, 5, 8]])),
    ("square_values CP2 b=10^5", lambda: _kernels.square_values(CP2.form, (1,), 10**5)),
]


def _same(a, b):
    if isinstance(a, tuple) and a and isinstance(a[0], np.ndarray):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if len(backends) == 1:
        print("numba is not installed; timing the numpy backend only")
    print(f"{'kernel':32s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup  same")
    for name, fn in CASES:
        row, results = [], []
        for b in backends:
            with _kernels.use_backend(b):
                results.append(fn())
                row.append(best_of(fn, args.repeat))
        speed = f"{row[0] / row[1]:9.1f}x" if len(row) == 2 and row[1] > 0 else "        -"
        same = all(_same(results[0], r) for r in results[1:])
        print(f"{name:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in row) + f"  {speed}  {same}")


if __name__ == "__main__":
    main()
