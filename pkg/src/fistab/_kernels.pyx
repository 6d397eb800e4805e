# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled row reduction over prime fields."""

from libc.stdint cimport int64_t
import numpy as np


cdef inline int64_t _inv(int64_t a, int64_t p) nogil:
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


def rref_modp(int64_t[:, ::1] m, int64_t p, bint reduced=True):
    """Row-reduce ``m`` in place modulo ``p``; return the pivot columns.

    Entries must already lie in ``[0, p)``. With ``reduced=False`` only the
    rows below each pivot are cleared (row echelon form).
    """
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t row = 0, c, r, rr, cc, k, nnz
    cdef int64_t f, inv, x
    cdef int64_t[::1] nzcols = np.empty(cols, dtype=np.int64)
    pivots = []
    if rows == 0:
        return pivots
    with nogil:
        for c in range(cols):
            if row >= rows:
                break
            r = row
            while r < rows and m[r, c] == 0:
                r += 1
            if r == rows:
                continue
            if r != row:
                for cc in range(c, cols):
                    x = m[r, cc]
                    m[r, cc] = m[row, cc]
                    m[row, cc] = x
            inv = _inv(m[row, c], p)
            nnz = 0
            for cc in range(c, cols):
                if m[row, cc] != 0:
                    m[row, cc] = (m[row, cc] * inv) % p
                    nzcols[nnz] = cc
                    nnz += 1
            for rr in range(0 if reduced else row + 1, rows):
                if rr == row:
                    continue
                f = m[rr, c]
                if f == 0:
                    continue
                for k in range(nnz):
                    cc = nzcols[k]
                    x = (m[rr, cc] - f * m[row, cc]) % p
                    if x < 0:
                        x += p
                    m[rr, cc] = x
            with gil:
                pivots.append(c)
            row += 1
    return pivots
