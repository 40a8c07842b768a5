# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination core.

Same contract as :mod:`dle._kernels_py`.  Entries must lie in ``[0, p)`` with
``p < 2**31`` so every product fits in a signed 64-bit integer.
"""

cimport cython
from libc.stdint cimport int64_t


cdef inline int64_t _inv(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef inline void _swap(int64_t[:, ::1] a, Py_ssize_t i, Py_ssize_t k, Py_ssize_t c0):
    cdef Py_ssize_t j
    cdef int64_t tmp
    for j in range(c0, a.shape[1]):
        tmp = a[i, j]
        a[i, j] = a[k, j]
        a[k, j] = tmp


def rref_mod_p(int64_t[:, ::1] a, int64_t p):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef int64_t inv, f, v
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            _swap(a, r, k, c)
        inv = _inv(a[r, c], p)
        for j in range(c, cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        v = (a[i, j] - f * a[r, j]) % p
                        if v < 0:
                            v += p
                        a[i, j] = v
        pivots.append(c)
        r += 1
    return pivots


def rank_mod_p(int64_t[:, ::1] a, int64_t p):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef int64_t inv, f, v
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            _swap(a, r, k, c)
        inv = _inv(a[r, c], p)
        for j in range(c, cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f != 0:
                for j in range(c, cols):
                    v = (a[i, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        r += 1
    return r
