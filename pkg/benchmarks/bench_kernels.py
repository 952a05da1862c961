"""Benchmark the pairwise-match table fill: numba JIT versus numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 50,100,200,400] [--pairs 50]
"""

import argparse
import random
import time

import numpy as np

from icmup import kernels


def make_pairs(rng, size, count, alphabet=8):
    pairs = []
    for _ in range(count):
        a = np.array([rng.randrange(alphabet) for _ in range(size)], dtype=np.int32)
        b = np.array([rng.randrange(alphabet) for _ in range(size)], dtype=np.int32)
        pairs.append((a, b))
    return pairs


def time_path(fn, pairs, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for a, b in pairs:
            fn(a, b)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--pairs", type=int, default=50)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rng = random.Random(1)
    if kernels.HAVE_NUMBA:
        kernels.warmup()
    else:
        print("numba not available; only the numpy path is timed")

    print(f"{'size':>6} {'pairs':>6} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}")
    for size in sizes:
        pairs = make_pairs(rng, size, args.pairs)
        t_numpy = time_path(kernels.suffix_table_numpy, pairs)
        if kernels.HAVE_NUMBA:
            t_numba = time_path(kernels.suffix_table_numba, pairs)
            speedup = t_numpy / t_numba if t_numba > 0 else float("inf")
            print(f"{size:>6} {args.pairs:>6} {t_numpy:>12.4f} {t_numba:>12.4f} "
                  f"{speedup:>8.1f}x")
        else:
            print(f"{size:>6} {args.pairs:>6} {t_numpy:>12.4f} {'-':>12} {'-':>9}")

    # sanity: both paths agree on a sample
    a, b = make_pairs(rng, 64, 1)[0]
    assert np.array_equal(kernels.suffix_table_numpy(a, b),
                          kernels.suffix_table_numba(a, b))
    print("paths agree on a sample pair")


if __name__ == "__main__":
    main()
