"""Kernel selection: the compiled extension when importable, else numpy.

Set ``FFCOUNT_PURE=1`` to force the numpy path.  int64 arrays go to the
selected backend; object arrays (counts beyond int64) always use numpy.
"""

from __future__ import annotations

import os

import numpy as np

from . import _purekernels as pure

INT64_SAFE = (1 << 63) - 1

compiled = None
if not os.environ.get("FFCOUNT_PURE"):
    try:
        from ._ext import vectorsum as compiled
    except ImportError:  # pragma: no cover - depends on the build
        compiled = None

BACKEND = "cython" if compiled is not None else "numpy"


def count_dtype(max_count: int):
    """int64 when every entry provably fits, else object."""
    return np.int64 if max_count <= INT64_SAFE else object


def _impl(arr, backend):
    if arr.dtype == object or backend == "numpy" or compiled is None:
        return pure
    return compiled


def shift_add(dst, src, v, mult, add_table, q, m, backend=None):
    _impl(dst, backend or BACKEND).shift_add(dst, src, int(v), mult, add_table, q, m)


def convolve(src, support, add_table, q, m, backend=None):
    return _impl(src, backend or BACKEND).convolve(src, support, add_table, q, m)
