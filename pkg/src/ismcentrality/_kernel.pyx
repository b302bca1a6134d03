# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled first-arrival spread kernel.

For every target t the table f(v, b) is filled bottom-up over the remaining
walk budget b:

    f(t, b) = 1,  f(v, 0) = 0 (v != t),
    f(v, b) = 1 - prod_{u in succ(v)} (1 - p_vu * g(u, b-1)),

where g(u, .) = w_u f(u, .) and g(t, .) is w_t or 1. Targets are processed in
blocks of BLOCK columns laid out contiguously so the innermost loop vectorises.
"""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport parallel, prange
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memcmp

cnp.import_array()

cdef enum:
    BLOCK = 16


cdef void _solve_block(
    Py_ssize_t n,
    const long long* indptr,
    const long long* indices,
    const double* probs,
    const double* weights,
    const long long* tgt,
    Py_ssize_t nt,
    int l_max,
    bint apply_target_weight,
    double* gp,
    double* gn,
    double* fc,
    double* out,
    Py_ssize_t out_stride,
    Py_ssize_t col0,
) noexcept nogil:
    cdef Py_ssize_t v, k, e, u, b
    cdef double acc[BLOCK]
    cdef double tw[BLOCK]
    cdef double pe
    cdef double* tmp
    cdef Py_ssize_t size = n * BLOCK

    for k in range(BLOCK):
        if k < nt:
            tw[k] = weights[tgt[k]] if apply_target_weight else 1.0
        else:
            tw[k] = 0.0
    for v in range(size):
        gp[v] = 0.0
        fc[v] = 0.0
    for k in range(nt):
        gp[tgt[k] * BLOCK + k] = tw[k]
        fc[tgt[k] * BLOCK + k] = 1.0

    for b in range(l_max):
        for v in range(n):
            for k in range(BLOCK):
                acc[k] = 1.0
            for e in range(indptr[v], indptr[v + 1]):
                u = indices[e] * BLOCK
                pe = probs[e]
                for k in range(BLOCK):
                    acc[k] *= 1.0 - pe * gp[u + k]
            for k in range(BLOCK):
                fc[v * BLOCK + k] = 1.0 - acc[k]
                gn[v * BLOCK + k] = weights[v] * (1.0 - acc[k])
        for k in range(nt):
            fc[tgt[k] * BLOCK + k] = 1.0
            gn[tgt[k] * BLOCK + k] = tw[k]
        # identical input tables give identical outputs from here on
        if memcmp(gn, gp, size * sizeof(double)) == 0:
            break
        tmp = gp
        gp = gn
        gn = tmp

    for v in range(n):
        for k in range(nt):
            out[v * out_stride + col0 + k] = fc[v * BLOCK + k]


def first_arrival_columns(
    const long long[::1] indptr,
    const long long[::1] indices,
    const double[::1] probs,
    const double[::1] weights,
    const long long[::1] targets,
    int l_max,
    bint apply_target_weight=True,
    int threads=1,
):
    """Return ``out`` of shape (n, len(targets)); ``out[s, k] = f(s, l_max)`` for target ``targets[k]``."""
    cdef Py_ssize_t n = weights.shape[0]
    cdef Py_ssize_t nt = targets.shape[0]
    cdef Py_ssize_t nblocks = (nt + BLOCK - 1) // BLOCK
    cdef Py_ssize_t blk, c0, cnt
    cdef double* buf
    cdef cnp.ndarray[cnp.float64_t, ndim=2] result = np.zeros((n, nt), dtype=np.float64)
    cdef double* outp = <double*> result.data
    cdef const long long* ip = &indptr[0]
    cdef const long long* ix = &indices[0] if indices.shape[0] else NULL
    cdef const double* pp = &probs[0] if probs.shape[0] else NULL
    cdef const double* wp = &weights[0] if n else NULL
    cdef const long long* tp = &targets[0] if nt else NULL

    if n == 0 or nt == 0:
        return result
    if threads < 1:
        threads = 1
    with nogil, parallel(num_threads=threads):
        buf = <double*> malloc(3 * n * BLOCK * sizeof(double))
        for blk in prange(nblocks, schedule="dynamic"):
            c0 = blk * BLOCK
            cnt = nt - c0
            if cnt > BLOCK:
                cnt = BLOCK
            _solve_block(n, ip, ix, pp, wp, tp + c0, cnt, l_max, apply_target_weight,
                         buf, buf + n * BLOCK, buf + 2 * n * BLOCK, outp, nt, c0)
        free(buf)
    return result
