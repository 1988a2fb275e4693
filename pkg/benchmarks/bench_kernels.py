#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage:  python benchmarks/bench_kernels.py [--repeat 3]

Covers the two hot loops: short-vector enumeration (branch and bound
over the Cholesky split) and the zero-sum label sweeps over all 2^16
subsets of Z_2^4.  Results are checked for equality across backends
before timing, so the numbers always compare like with like.
"""

import argparse
import sys
import time

from hkfl import _kernels_py, kernels
from hkfl.e8 import e8_lattice

try:
    from hkfl import _speedups
except ImportError:
    _speedups = None


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def enumeration_task(backend, bound):
    gram = [list(r) for r in e8_lattice().gram]
    d, mu = kernels._cholesky_split(gram)
    d_f = [float(x) for x in d]
    mu_f = [[float(x) for x in row] for row in mu]
    eps = 1e-6 * max(1.0, float(bound))

    def run():
        return sorted(map(tuple, backend.enumerate_padded(d_f, mu_f,
                                                          float(bound), eps)))
    return run


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--bound", type=int, default=10,
                        help="norm bound for the enumeration benchmark")
    args = parser.parse_args(argv)

    if _speedups is None:
        print("compiled kernels unavailable; nothing to compare")
        return 1

    tasks = [
        (f"short vectors, bound {args.bound}",
         enumeration_task(_kernels_py, args.bound),
         enumeration_task(_speedups, args.bound)),
        ("zero-sum subset counts (2^16 sweep)",
         _kernels_py.zero_sum_counts, _speedups.zero_sum_counts),
        ("label pair sweep (2.7M submasks)",
         _kernels_py.kummer_pair_counts, _speedups.kummer_pair_counts),
    ]

    print(f"{'task':<38} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, py_fn, c_fn in tasks:
        py_time, py_result = time_call(py_fn, args.repeat)
        c_time, c_result = time_call(c_fn, args.repeat)
        if py_result != c_result:
            print(f"{name:<38} BACKEND MISMATCH")
            return 2
        print(f"{name:<38} {py_time:>9.3f}s {c_time:>9.3f}s "
              f"{py_time / c_time:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
