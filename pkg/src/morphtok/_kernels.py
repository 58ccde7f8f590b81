"""Numeric inner-loop kernels, each with a numba and a pure-numpy implementation.

The active backend is chosen at import time: numba when it is importable,
unless the environment variable ``MORPHTOK_NUMBA`` is set to ``0``, ``off``
or ``numpy``.  Every kernel here is restricted to additions and comparisons
(no transcendental functions), so the two backends return bit-identical
results and the flag can only change speed, never output bytes.

``benchmarks/bench_kernels.py`` times the two backends against each other.
"""

from __future__ import annotations

import os

import numpy as np

_env = os.environ.get("MORPHTOK_NUMBA", "").strip().lower()
if _env in ("0", "no", "off", "false", "numpy"):
    HAS_NUMBA = False
else:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# Fixed-tree pairwise summation.
#
# Both backends reduce with the same balanced tree (adjacent pairs, odd
# element carried to the end of the next level), so sums are reproducible
# and independent of the backend.

def _tree_sum_loop(values):
    n = values.size
    if n == 0:
        return 0.0
    buf = values.copy()
    while n > 1:
        half = n // 2
        for i in range(half):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        if n & 1:
            buf[half] = buf[n - 1]
            n = half + 1
        else:
            n = half
    return buf[0]


def _tree_sum_np(values: np.ndarray) -> float:
    n = values.size
    if n == 0:
        return 0.0
    buf = values.astype(np.float64, copy=True)
    while n > 1:
        half = n // 2
        head = buf[0 : 2 * half : 2] + buf[1 : 2 * half : 2]
        if n & 1:
            nxt = np.empty(half + 1, dtype=np.float64)
            nxt[:half] = head
            nxt[half] = buf[n - 1]
            buf = nxt
            n = half + 1
        else:
            buf = head
            n = half
    return float(buf[0])


# ---------------------------------------------------------------------------
# Viterbi lattice solve.
#
# cand[i, l] holds the cost in bits of taking word[i : i + l + 1] as one
# morph (np.inf where i + l + 1 > n or l exceeds the cap).  Suffix DP with a
# deterministic tie rule: minimal cost, then fewest morphs, then the longest
# first morph (applied recursively via the backpointers).

def _viterbi_solve_loop(cand, n):
    maxlen = cand.shape[1]
    cost = np.empty(n + 1, dtype=np.float64)
    count = np.empty(n + 1, dtype=np.int64)
    bp = np.zeros(n + 1, dtype=np.int64)
    cost[n] = 0.0
    count[n] = 0
    for i in range(n - 1, -1, -1):
        best_cost = np.inf
        best_count = np.int64(0)
        best_j = i + 1
        top = n - i
        if maxlen < top:
            top = maxlen
        for l in range(top):
            j = i + l + 1
            c = cand[i, l] + cost[j]
            k = 1 + count[j]
            # ties: fewer morphs wins, then the later (longer) morph wins
            if c < best_cost or (c == best_cost and k <= best_count):
                best_cost = c
                best_count = k
                best_j = j
        cost[i] = best_cost
        count[i] = best_count
        bp[i] = best_j
    return cost, count, bp


def _viterbi_solve_np(cand: np.ndarray, n: int):
    maxlen = cand.shape[1]
    cost = np.empty(n + 1, dtype=np.float64)
    count = np.empty(n + 1, dtype=np.int64)
    bp = np.zeros(n + 1, dtype=np.int64)
    cost[n] = 0.0
    count[n] = 0
    for i in range(n - 1, -1, -1):
        top = min(maxlen, n - i)
        c = cand[i, :top] + cost[i + 1 : i + 1 + top]
        k = 1 + count[i + 1 : i + 1 + top]
        cmin = c.min()
        at_min = c == cmin
        kmin = k[at_min].min()
        # last index achieving (cmin, kmin) = longest first morph
        l = int(np.flatnonzero(at_min & (k == kmin))[-1])
        cost[i] = cmin
        count[i] = kmin
        bp[i] = i + l + 1
    return cost, count, bp


# ---------------------------------------------------------------------------
# Weighted sampling without replacement.
#
# Sequential renormalized draws: each uniform in [0, 1) is scaled by the
# remaining total weight and located in the running cumulative sum.  The
# uniforms are produced by the caller so the RNG stays in one place.

def _weighted_draw_loop(weights, uniforms):
    n = weights.size
    k = uniforms.size
    w = weights.copy()
    out = np.empty(k, dtype=np.int64)
    cum = np.empty(n, dtype=np.float64)
    for t in range(k):
        total = 0.0
        for i in range(n):
            total += w[i]
            cum[i] = total
        target = uniforms[t] * total
        j = n - 1
        for i in range(n):
            if cum[i] > target:
                j = i
                break
        while w[j] == 0.0:
            j -= 1
        out[t] = j
        w[j] = 0.0
    return out


def _weighted_draw_np(weights: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    n = weights.size
    k = uniforms.size
    w = weights.astype(np.float64, copy=True)
    out = np.empty(k, dtype=np.int64)
    for t in range(k):
        cum = np.cumsum(w)
        target = uniforms[t] * cum[-1]
        j = int(np.searchsorted(cum, target, side="right"))
        if j >= n:
            j = n - 1
        while w[j] == 0.0:
            j -= 1
        out[t] = j
        w[j] = 0.0
    return out


# ---------------------------------------------------------------------------
# Decade histogram bucketing.
#
# bounds is an exact table of powers of ten; values below bounds[0] fall
# into the lowest bucket.  Comparison-only, so boundaries like 1000.0
# bucket identically in both backends.

def _bucket_counts_loop(values, bounds):
    nb = bounds.size
    out = np.zeros(nb, dtype=np.int64)
    for v in values:
        idx = 0
        for b in range(nb - 1, -1, -1):
            if v >= bounds[b]:
                idx = b
                break
        out[idx] += 1
    return out


def _bucket_counts_np(values: np.ndarray, bounds: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(bounds, values, side="right") - 1
    idx = np.clip(idx, 0, bounds.size - 1)
    return np.bincount(idx, minlength=bounds.size).astype(np.int64)


if HAS_NUMBA:
    _tree_sum_nb = njit(cache=True)(_tree_sum_loop)
    _viterbi_solve_nb = njit(cache=True)(_viterbi_solve_loop)
    _weighted_draw_nb = njit(cache=True)(_weighted_draw_loop)
    _bucket_counts_nb = njit(cache=True)(_bucket_counts_loop)

    tree_sum = _tree_sum_nb
    viterbi_solve = _viterbi_solve_nb
    weighted_draw = _weighted_draw_nb
    bucket_counts = _bucket_counts_nb
else:
    tree_sum = _tree_sum_np
    viterbi_solve = _viterbi_solve_np
    weighted_draw = _weighted_draw_np
    bucket_counts = _bucket_counts_np


def backend_pairs():
    """(name, numba_or_loop_impl, numpy_impl) triples, for tests and benchmarks."""
    if HAS_NUMBA:
        return [
            ("tree_sum", _tree_sum_nb, _tree_sum_np),
            ("viterbi_solve", _viterbi_solve_nb, _viterbi_solve_np),
            ("weighted_draw", _weighted_draw_nb, _weighted_draw_np),
            ("bucket_counts", _bucket_counts_nb, _bucket_counts_np),
        ]
    return [
        ("tree_sum", _tree_sum_loop, _tree_sum_np),
        ("viterbi_solve", _viterbi_solve_loop, _viterbi_solve_np),
        ("weighted_draw", _weighted_draw_loop, _weighted_draw_np),
        ("bucket_counts", _bucket_counts_loop, _bucket_counts_np),
    ]
