#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

The workloads mirror the pipeline's real shapes: per-word Viterbi lattices,
one annotation-sampling pass over a 53k-word candidate pool, and the
reduction/bucketing passes of the analysis report.

Run: python3 benchmarks/bench_kernels.py
(set MORPHTOK_NUMBA=0 to check the numpy-only configuration imports too)
"""

import time

import numpy as np

from morphtok._kernels import BACKEND, HAS_NUMBA, backend_pairs


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_tree_sum(impl):
    x = np.random.default_rng(0).exponential(size=200_000)
    return timeit(lambda: impl(x.copy()))


def bench_viterbi(impl):
    rng = np.random.default_rng(1)
    lattices = []
    for _ in range(2000):
        n = int(rng.integers(3, 20))
        cand = rng.exponential(5.0, size=(n, n))
        for i in range(n):
            cand[i, n - i:] = np.inf
        lattices.append((cand, n))

    def run():
        for cand, n in lattices:
            impl(cand, n)

    return timeit(run, repeat=3)


def bench_weighted_draw(impl):
    rng = np.random.default_rng(2)
    w = rng.random(53_000) + 1e-9
    u = rng.random(3000)
    return timeit(lambda: impl(w.copy(), u), repeat=3)


def bench_bucket_counts(impl):
    rng = np.random.default_rng(3)
    values = np.floor(rng.exponential(2000, size=50_000)) + 1
    bounds = np.array([float(10**k) for k in range(8)])
    return timeit(lambda: impl(values, bounds))


BENCHES = {
    "tree_sum": bench_tree_sum,
    "viterbi_solve": bench_viterbi,
    "weighted_draw": bench_weighted_draw,
    "bucket_counts": bench_bucket_counts,
}


def main():
    print(f"active backend: {BACKEND} (numba available: {HAS_NUMBA})")
    print(f"{'kernel':<16} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    print("-" * 52)
    for name, fast, fallback in backend_pairs():
        bench = BENCHES[name]
        if HAS_NUMBA:
            bench(fast)  # warm up JIT compilation before timing
        t_fast = bench(fast)
        t_np = bench(fallback)
        label = f"{t_fast * 1e3:9.2f} ms"
        print(f"{name:<16} {label:>12} {t_np * 1e3:9.2f} ms {t_np / t_fast:8.2f}x")
    if not HAS_NUMBA:
        print("note: numba unavailable or disabled; first column is the pure-python loop")


if __name__ == "__main__":
    main()
