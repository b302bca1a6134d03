"""Pure-Python (numpy) implementation of the first-arrival spread kernel.

Same recursion and stopping rule as the compiled ``_kernel`` module; all
targets of a block are advanced together, one budget step per iteration.
"""
from __future__ import annotations

import numpy as np

BLOCK = 256


def first_arrival_columns(indptr, indices, probs, weights, targets, l_max,
                          apply_target_weight=True, threads=1):
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    probs = np.asarray(probs, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.int64)
    n, nt = weights.shape[0], targets.shape[0]
    out = np.zeros((n, nt), dtype=np.float64)
    if n == 0 or nt == 0:
        return out
    degree = np.diff(indptr)
    rows = np.flatnonzero(degree)  # reduceat cannot express empty segments
    starts = indptr[rows]
    for c0 in range(0, nt, BLOCK):
        tgt = targets[c0:c0 + BLOCK]
        cols = np.arange(tgt.size)
        tw = weights[tgt] if apply_target_weight else np.ones(tgt.size)
        g = np.zeros((n, tgt.size))
        g[tgt, cols] = tw
        f = np.zeros((n, tgt.size))
        f[tgt, cols] = 1.0
        for _ in range(l_max):
            f = np.zeros((n, tgt.size))
            if rows.size:
                terms = 1.0 - probs[:, None] * g[indices]
                f[rows] = 1.0 - np.multiply.reduceat(terms, starts, axis=0)
            f[tgt, cols] = 1.0
            g_next = weights[:, None] * f
            g_next[tgt, cols] = tw
            if np.array_equal(g_next, g):
                break
            g = g_next
        out[:, c0:c0 + tgt.size] = f
    return out
