# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels (merge passes over sorted samples)."""

import numpy as np
cimport numpy as cnp

from libc.math cimport NAN

cnp.import_array()

BACKEND = "cython"


cdef void _merge_counts(const double[::1] xs, const double[::1] ys, double shift,
                        cnp.int64_t[::1] row_twice, cnp.int64_t[::1] col_twice,
                        cnp.int64_t* n_less, cnp.int64_t* n_equal) noexcept nogil:
    cdef Py_ssize_t n1 = xs.shape[0], n2 = ys.shape[0]
    cdef Py_ssize_t i, j, lo = 0, hi = 0
    cdef double v
    cdef cnp.int64_t less = 0, equal = 0
    # columns: lo = #{x < y_j}, hi = #{x <= y_j}
    for j in range(n2):
        v = ys[j] + shift
        while lo < n1 and xs[lo] < v:
            lo += 1
        if hi < lo:
            hi = lo
        while hi < n1 and xs[hi] <= v:
            hi += 1
        col_twice[j] = lo + hi
        less += lo
        equal += hi - lo
    # rows: lo = #{y < x_i}, hi = #{y <= x_i}
    lo = 0
    hi = 0
    for i in range(n1):
        v = xs[i]
        while lo < n2 and ys[lo] + shift < v:
            lo += 1
        if hi < lo:
            hi = lo
        while hi < n2 and ys[hi] + shift <= v:
            hi += 1
        row_twice[i] = 2 * n2 - lo - hi
    n_less[0] = less
    n_equal[0] = equal


def kernel_counts(const double[::1] xs, const double[::1] ys):
    """Same contract as ``_pykernels.kernel_counts``."""
    cdef cnp.int64_t less, equal
    row = np.empty(xs.shape[0], dtype=np.int64)
    col = np.empty(ys.shape[0], dtype=np.int64)
    cdef cnp.int64_t[::1] rv = row
    cdef cnp.int64_t[::1] cv = col
    with nogil:
        _merge_counts(xs, ys, 0.0, rv, cv, &less, &equal)
    return row, col, int(less), int(equal)


def shift_grid(const double[::1] xs, const double[::1] ys, const double[::1] shifts):
    """Same contract as ``_pykernels.shift_grid``."""
    cdef Py_ssize_t n1 = xs.shape[0], n2 = ys.shape[0], k = shifts.shape[0]
    cdef Py_ssize_t g, i, j
    cdef double m = <double>n1 * <double>n2
    cdef cnp.int64_t less, equal, s1
    cdef double mu, d, acc, n_zero
    row = np.empty(n1, dtype=np.int64)
    col = np.empty(n2, dtype=np.int64)
    out = np.empty((4, k), dtype=np.float64)
    cdef cnp.int64_t[::1] rv = row
    cdef cnp.int64_t[::1] cv = col
    cdef double[:, ::1] o = out
    with nogil:
        for g in range(k):
            _merge_counts(xs, ys, shifts[g], rv, cv, &less, &equal)
            s1 = 2 * less + equal
            o[0, g] = s1 / (2.0 * m)
            if n1 > 1:
                acc = 0.0
                for i in range(n1):
                    d = <double>(n1 * rv[i] - s1)
                    acc += d * d
                o[1, g] = acc / (4.0 * m * m * (n1 - 1))
            else:
                o[1, g] = NAN
            if n2 > 1:
                acc = 0.0
                for j in range(n2):
                    d = <double>(n2 * cv[j] - s1)
                    acc += d * d
                o[2, g] = acc / (4.0 * m * m * (n2 - 1))
            else:
                o[2, g] = NAN
            if m > 1:
                mu = s1 / m
                n_zero = m - less - equal
                acc = n_zero * mu * mu + equal * (1.0 - mu) * (1.0 - mu) + less * (2.0 - mu) * (2.0 - mu)
                o[3, g] = acc / (4.0 * (m - 1))
            else:
                o[3, g] = NAN
    return out[0], out[1], out[2], out[3]
