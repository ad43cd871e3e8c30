# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Shift-and-add over the dense value-vector array of F_q^m (int64 counts).

State index of (e_0, ..., e_{m-1}) is sum(e_i * q**(m-1-i)).  Callers must
guarantee that no partial sum exceeds the int64 range.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef inline Py_ssize_t _target(Py_ssize_t s, const i64[:, ::1] shifted, Py_ssize_t q, Py_ssize_t m) nogil:
    # shifted[i, e] = (e + v_i) * stride_i
    cdef Py_ssize_t t = 0
    cdef Py_ssize_t i
    for i in range(m - 1, -1, -1):
        t += shifted[i, s % q]
        s //= q
    return t


cdef void _shift_add(i64[::1] dst, const i64[::1] src, const i64[:, ::1] shifted,
                     i64 mult, Py_ssize_t q, Py_ssize_t m) nogil:
    cdef Py_ssize_t n = src.shape[0]
    cdef Py_ssize_t s
    cdef i64 x
    for s in range(n):
        x = src[s]
        if x != 0:
            dst[_target(s, shifted, q, m)] += mult * x


def _shift_rows(const i64[:, ::1] add_table, v_digits, Py_ssize_t q, Py_ssize_t m):
    rows = np.empty((m, q), dtype=np.int64)
    cdef i64[:, ::1] r = rows
    cdef Py_ssize_t i, e
    cdef i64 stride = 1
    for i in range(m - 1, -1, -1):
        for e in range(q):
            r[i, e] = add_table[e, v_digits[i]] * stride
        stride *= q
    return rows


def shift_add(cnp.ndarray dst, cnp.ndarray src, Py_ssize_t v, i64 mult,
              cnp.ndarray add_table, Py_ssize_t q, Py_ssize_t m):
    """dst[s + v] += mult * src[s] for every state s (in place)."""
    digits = [0] * m
    cdef Py_ssize_t i, w = v
    for i in range(m - 1, -1, -1):
        digits[i] = w % q
        w //= q
    rows = _shift_rows(add_table, digits, q, m)
    cdef i64[::1] d = dst
    cdef const i64[::1] sv = src
    cdef const i64[:, ::1] sh = rows
    with nogil:
        _shift_add(d, sv, sh, mult, q, m)


def convolve(cnp.ndarray src, support, cnp.ndarray add_table, Py_ssize_t q, Py_ssize_t m):
    """Return sum over (v, c) in support of c * (src shifted by v)."""
    out = np.zeros_like(src)
    for v, c in support:
        shift_add(out, src, v, c, add_table, q, m)
    return out
