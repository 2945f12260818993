# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Murnaghan-Nakayama level fill over int64 buffers.

Callers must keep n small enough that every partial sum fits in int64; see
``characters.INT64_SAFE_N``.
"""
from libc.stdint cimport int64_t


def fill_level(int64_t[::1] buf, int64_t[::1] offsets, int64_t[::1] counts,
               Py_ssize_t m, int64_t[::1] hook_ptr, int64_t[::1] hook_tgt,
               int64_t[::1] hook_sgn, int64_t[::1] col_r, int64_t[::1] col_tail):
    cdef Py_ssize_t p = counts[m]
    cdef Py_ssize_t out = offsets[m]
    cdef Py_ssize_t width = m + 1
    cdef Py_ssize_t i, j, h, r, lo, hi, sub, stride, tail, row
    cdef int64_t acc
    with nogil:
        for i in range(p):
            row = i * width
            for j in range(p):
                r = col_r[j]
                lo = hook_ptr[row + r]
                hi = hook_ptr[row + r + 1]
                acc = 0
                if lo < hi:
                    sub = offsets[m - r]
                    stride = counts[m - r]
                    tail = col_tail[j]
                    for h in range(lo, hi):
                        acc += hook_sgn[h] * buf[sub + hook_tgt[h] * stride + tail]
                buf[out + i * p + j] = acc
