"""Time the compiled and numpy shift-add kernels on dense DP arrays.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from ffcount import _purekernels, kernels
from ffcount.field import field_from_order

CASES = [(16, 2), (32, 2), (64, 2), (9, 3), (16, 3), (5, 5), (3, 8)]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'q':>4} {'m':>2} {'states':>8} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for q, m in CASES:
        f = field_from_order(q)
        n = q**m
        src = rng.integers(0, 1000, n, dtype=np.int64)
        # a full convolution step: one shift per field element, as in the DP
        support = [(int(v), 1) for v in rng.integers(0, n, q)]
        t_np = _time(lambda: _purekernels.convolve(src, support, f.add_table, q, m), args.repeat)
        if kernels.compiled is None:
            print(f"{q:>4} {m:>2} {n:>8} {t_np * 1e3:>10.2f} {'n/a':>10} {'n/a':>8}")
            continue
        t_cy = _time(lambda: kernels.compiled.convolve(src, support, f.add_table, q, m), args.repeat)
        assert np.array_equal(
            _purekernels.convolve(src, support, f.add_table, q, m),
            kernels.compiled.convolve(src, support, f.add_table, q, m),
        )
        print(f"{q:>4} {m:>2} {n:>8} {t_np * 1e3:>10.2f} {t_cy * 1e3:>10.2f} {t_np / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
