# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Mod-p dense row reduction, compiled backend.

Mirrors twistcheck._kernels.pykernels.rref_mod_p exactly: same pivot rule,
same output, just compiled loops.
"""

import numpy as np
cimport numpy as cnp

BACKEND_NAME = "compiled"


cdef long long _inv_mod(long long a, long long p):
    cdef long long result = 1
    cdef long long base = a % p
    cdef long long e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod_p(a, long long p):
    """Reduced row echelon form over Z/p; see the python backend docstring."""
    arr = np.ascontiguousarray(a, dtype=np.int64) % p
    cdef long long[:, ::1] m = arr
    cdef Py_ssize_t nrows = arr.shape[0]
    cdef Py_ssize_t ncols = arr.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, t
    cdef long long inv, f, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        i = -1
        for t in range(r, nrows):
            if m[t, c] != 0:
                i = t
                break
        if i < 0:
            continue
        if i != r:
            for j in range(ncols):
                tmp = m[r, j]
                m[r, j] = m[i, j]
                m[i, j] = tmp
        inv = _inv_mod(m[r, c], p)
        for j in range(ncols):
            m[r, j] = m[r, j] * inv % p
        for t in range(nrows):
            if t == r:
                continue
            f = m[t, c]
            if f == 0:
                continue
            for j in range(ncols):
                m[t, j] = (m[t, j] - f * m[r, j]) % p
                if m[t, j] < 0:
                    m[t, j] += p
        pivots.append(c)
        r += 1
    return r, pivots, arr[:r]
