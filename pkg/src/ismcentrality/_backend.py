"""Kernel selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``ISM_BACKEND=python`` is set, the numpy fallback is.
``ISM_THREADS`` caps the OpenMP thread count of the compiled kernel.
"""
from __future__ import annotations

import os

from . import _fallback

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": _fallback.first_arrival_columns}
if _compiled is not None:
    KERNELS["cython"] = _compiled.first_arrival_columns

if os.environ.get("ISM_BACKEND", "").lower() == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"


def default_threads() -> int:
    try:
        cap = int(os.environ.get("ISM_THREADS", "0"))
    except ValueError:
        cap = 0
    ncpu = os.cpu_count() or 1
    return min(cap, ncpu) if cap > 0 else ncpu


def first_arrival_columns(indptr, indices, probs, weights, targets, l_max,
                          apply_target_weight=True, backend=None, threads=None):
    name = backend or BACKEND
    if name not in KERNELS:
        raise ValueError(f"backend {name!r} is not available (have {', '.join(sorted(KERNELS))})")
    kernel = KERNELS[name]
    return kernel(indptr, indices, probs, weights, targets, int(l_max),
                  bool(apply_target_weight), threads or default_threads())
