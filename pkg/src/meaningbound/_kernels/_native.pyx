# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled posting-list kernels: two-pointer merges over sorted int64 arrays.

Same contract as the pure module: strictly increasing int64 inputs, new
``array('q')`` outputs, inputs never mutated.
"""

from cpython cimport array

import array as _array

cdef array.array _LL_TEMPLATE = _array.array("q")


def intersect(const long long[::1] a, const long long[::1] b):
    """Elements common to two sorted posting lists, sorted."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t cap = na if na < nb else nb
    cdef array.array out = array.clone(_LL_TEMPLATE, cap, zero=False)
    cdef long long* o = out.data.as_longlongs
    cdef Py_ssize_t i = 0, j = 0, k = 0
    while i < na and j < nb:
        if a[i] < b[j]:
            i += 1
        elif b[j] < a[i]:
            j += 1
        else:
            o[k] = a[i]
            k += 1
            i += 1
            j += 1
    array.resize(out, k)
    return out


def intersect_count(const long long[::1] a, const long long[::1] b):
    """Number of elements common to two sorted posting lists."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t i = 0, j = 0, k = 0
    while i < na and j < nb:
        if a[i] < b[j]:
            i += 1
        elif b[j] < a[i]:
            j += 1
        else:
            k += 1
            i += 1
            j += 1
    return k


def difference_count(const long long[::1] a, const long long[::1] b):
    """Number of elements of ``a`` that are not in ``b``."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t i = 0, j = 0, k = 0
    while i < na and j < nb:
        if a[i] < b[j]:
            k += 1
            i += 1
        elif b[j] < a[i]:
            j += 1
        else:
            i += 1
            j += 1
    return k + (na - i)


def shifted_intersect(const long long[::1] a, const long long[::1] b, long long shift):
    """Elements x of ``a`` with x + shift present in ``b``, sorted."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef array.array out = array.clone(_LL_TEMPLATE, na, zero=False)
    cdef long long* o = out.data.as_longlongs
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef long long want
    while i < na and j < nb:
        want = a[i] + shift
        if b[j] < want:
            j += 1
        elif b[j] > want:
            i += 1
        else:
            o[k] = a[i]
            k += 1
            i += 1
            j += 1
    array.resize(out, k)
    return out
