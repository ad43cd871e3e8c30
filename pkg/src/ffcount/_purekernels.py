"""Numpy implementation of the counting kernels.

Works for int64 and object (arbitrary precision) arrays; used when the
compiled extension is unavailable and for every object-dtype computation.
"""

from __future__ import annotations

import numpy as np


def _index_grid(add_table: np.ndarray, v: int, q: int, m: int):
    digits = []
    for _ in range(m):
        v, r = divmod(v, q)
        digits.append(r)
    digits.reverse()
    return np.ix_(*[add_table[:, d] for d in digits])


def shift_add(dst, src, v, mult, add_table, q, m):
    """dst[s + v] += mult * src[s] for every state s (in place)."""
    shape = (q,) * m
    grid = _index_grid(add_table, v, q, m)
    d = dst.reshape(shape)
    d[grid] += mult * src.reshape(shape)


def convolve(src, support, add_table, q, m):
    out = np.zeros_like(src)
    for v, c in support:
        shift_add(out, src, v, c, add_table, q, m)
    return out
