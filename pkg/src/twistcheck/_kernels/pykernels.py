"""Mod-p dense row reduction, numpy implementation.

This is the fallback backend; twistcheck._speedups provides the same routine
compiled with Cython.  Both must produce identical output for identical
input: pivots are chosen as the first row with a nonzero entry, scanning
columns left to right.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def rref_mod_p(a: np.ndarray, p: int) -> tuple[int, list[int], np.ndarray]:
    """Reduced row echelon form of ``a`` over Z/p.

    Returns (rank, pivot column indices, nonzero rows of the RREF).
    Requires p < 2**31 so int64 products cannot overflow.
    """
    a = np.ascontiguousarray(a, dtype=np.int64) % p
    m, k = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(k):
        if r == m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        rest = a[:, c].copy()
        rest[r] = 0
        rows = np.nonzero(rest)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(rest[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return r, pivots, a[:r]
