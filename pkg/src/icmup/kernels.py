"""Pairwise match kernels: the dynamic-programming table behind alignment.

The table fill is the one hot inner loop in the package (it runs once per
candidate pair during alignment search and retrieval), so it is JIT-compiled
with numba when available.  Setting ``ICMUP_NO_NUMBA=1`` in the environment
selects the pure-numpy fallback, which sweeps rows with a vectorised running
maximum instead of two scalar loops.  ``benchmarks/bench_kernels.py``
compares the two paths.

Both kernels fill the suffix table ``dp[i, j] = L(a[i:], b[j:])`` where L is
the length of the longest common subsequence, so the greedy forward walk in
``match_pairs`` yields the leftmost optimal pairing.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("ICMUP_NO_NUMBA", "") not in ("1", "true", "yes")


def _suffix_table_py(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    m = b.shape[0]
    dp = np.zeros((n + 1, m + 1), dtype=np.int32)
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            best = dp[i + 1, j]
            if dp[i, j + 1] > best:
                best = dp[i, j + 1]
            if a[i] == b[j] and dp[i + 1, j + 1] + 1 > best:
                best = dp[i + 1, j + 1] + 1
            dp[i, j] = best
    return dp


def suffix_table_numpy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Suffix LCS table via one python loop over rows.

    Within a row, dp[i, j] = max(c[j], c[j+1], ..., c[m-1]) where
    c[j] = max(dp[i+1, j], dp[i+1, j+1] + (a[i] == b[j])), so the row is a
    reversed cumulative maximum of c.
    """
    n = a.shape[0]
    m = b.shape[0]
    dp = np.zeros((n + 1, m + 1), dtype=np.int32)
    if m == 0:
        return dp
    for i in range(n - 1, -1, -1):
        eq = (b == a[i]).astype(np.int32)
        c = np.maximum(dp[i + 1, :m], dp[i + 1, 1:] + eq)
        dp[i, :m] = np.maximum.accumulate(c[::-1])[::-1]
    return dp


if HAVE_NUMBA:
    suffix_table_numba = njit(cache=True)(_suffix_table_py)
else:  # pragma: no cover
    suffix_table_numba = _suffix_table_py


def suffix_table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dispatch to the jitted kernel or the numpy fallback (env-selected)."""
    if USE_NUMBA:
        return suffix_table_numba(a, b)
    return suffix_table_numpy(a, b)


def match_pairs(a_ids: np.ndarray, b_ids: np.ndarray) -> list[tuple[int, int]]:
    """Leftmost maximum set of matched index pairs between two id sequences.

    The number of pairs equals the LCS length; pairs are strictly increasing
    in both coordinates.
    """
    dp = suffix_table(a_ids, b_ids)
    n = a_ids.shape[0]
    m = b_ids.shape[0]
    pairs: list[tuple[int, int]] = []
    i = j = 0
    while i < n and j < m:
        if a_ids[i] == b_ids[j] and dp[i + 1, j + 1] + 1 == dp[i, j]:
            pairs.append((i, j))
            i += 1
            j += 1
        elif dp[i + 1, j] == dp[i, j]:
            i += 1
        else:
            j += 1
    return pairs


def intern_ids(*sequences: tuple[str, ...]) -> list[np.ndarray]:
    """Map symbol texts to shared int32 ids, one array per input sequence."""
    table: dict[str, int] = {}
    out = []
    for seq in sequences:
        ids = np.empty(len(seq), dtype=np.int32)
        for k, text in enumerate(seq):
            ids[k] = table.setdefault(text, len(table))
        out.append(ids)
    return out


def warmup() -> None:
    """Trigger JIT compilation so timed paths do not pay for it."""
    a = np.array([0, 1, 2], dtype=np.int32)
    suffix_table(a, a)
