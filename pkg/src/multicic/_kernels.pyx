# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rank-map kernels.

Mirrors ``_kernels_py`` exactly; when the query vector is ascending a single
merge pass replaces the per-query binary search.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline Py_ssize_t _bisect_right(const double[::1] a, double x, Py_ssize_t lo) noexcept nogil:
    cdef Py_ssize_t hi = a.shape[0]
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if x < a[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


cdef bint _is_ascending(const double[::1] q) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(1, q.shape[0]):
        if q[i] < q[i - 1]:
            return False
    return True


def count_le(const double[::1] sorted_values, const double[::1] queries):
    cdef Py_ssize_t m = queries.shape[0]
    cdef Py_ssize_t n = sorted_values.shape[0]
    out = np.empty(m, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef Py_ssize_t i, pos = 0
    with nogil:
        if _is_ascending(queries):
            for i in range(m):
                while pos < n and sorted_values[pos] <= queries[i]:
                    pos += 1
                res[i] = pos
        else:
            for i in range(m):
                res[i] = _bisect_right(sorted_values, queries[i], 0)
    return out


def rank_map(const double[::1] queries, const double[::1] from_sorted, const double[::1] to_sorted):
    cdef Py_ssize_t m = queries.shape[0]
    cdef int64_t n_from = from_sorted.shape[0]
    cdef int64_t n_to = to_sorted.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    cdef Py_ssize_t i, pos = 0
    cdef int64_t c, k
    cdef Py_ssize_t zeros = 0
    cdef bint ascending
    with nogil:
        ascending = _is_ascending(queries)
        for i in range(m):
            if ascending:
                while pos < n_from and from_sorted[pos] <= queries[i]:
                    pos += 1
                c = pos
            else:
                c = _bisect_right(from_sorted, queries[i], 0)
            if c == 0:
                zeros += 1
                k = 1
            else:
                k = (n_to * c + n_from - 1) // n_from
            res[i] = to_sorted[k - 1]
    return out, zeros
