"""Certified exact linear algebra over Q.

The workhorses compute mod several word-size primes through the selected
kernel backend, reconstruct rational results by CRT + rational
reconstruction, and then *prove* the answer exact:

* a kernel basis is certified by exhibiting nullity_p independent vectors
  that satisfy A v = 0 exactly (rank can only drop mod p, so the count is
  also an upper bound);
* a minimal polynomial is certified by exact vanishing at a degree that some
  prime already forces as a lower bound.

Verification of big integer identities uses fresh primes whose product
exceeds twice an explicit bound, which makes the modular check a proof.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from ..errors import ResourceLimitError
from ..polys import pmod_trim
from . import rref_mod_p

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime_u64(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class _PrimePool:
    def __init__(self, start: int):
        self._next = start
        self._primes: list[int] = []

    def get(self, count: int) -> list[int]:
        while len(self._primes) < count:
            self._next -= 1
            if _is_prime_u64(self._next):
                self._primes.append(self._next)
        return self._primes[:count]

    def iterate(self):
        i = 0
        while True:
            yield self.get(i + 1)[i]
            i += 1


# Solve primes stay below 2^27 so int64 survives dot products summing up to
# 512 terms of size p^2; verification primes stay below 2^20 so Horner sums
# over <= 4096 terms fit as well.
SOLVE_PRIMES = _PrimePool(2**27)
VERIFY_PRIMES = _PrimePool(2**20)

_MAX_SOLVE_PRIMES = 64


def rational_reconstruct(c: int, m: int):
    """Unique n/d with n = c*d mod m and |n|, d <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, c % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    n, d = r1, s1
    if d == 0:
        return None
    if d < 0:
        n, d = -n, -d
    if d > bound or gcd(n, d) != 1:
        return None
    return Fraction(n, d)


def _crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    g, inv = 0, pow(m1, -1, m2)
    t = (a2 - a1) * inv % m2
    return a1 + m1 * t, m1 * m2


def crt_combine(residues: list[int], primes: list[int]) -> tuple[int, int]:
    a, m = residues[0] % primes[0], primes[0]
    for r, p in zip(residues[1:], primes[1:]):
        a, m = _crt_pair(a, m, r % p, p)
    return a, m


def _rows_mod_p(rows: list[list[int]], p: int, fits64: bool) -> np.ndarray:
    if fits64:
        return np.array(rows, dtype=np.int64) % p
    return np.array([[x % p for x in row] for row in rows], dtype=np.int64)


def _fresh_verify_primes(bound: int) -> list[int]:
    prod, out = 1, []
    it = VERIFY_PRIMES.iterate()
    while prod <= 2 * bound:
        q = next(it)
        out.append(q)
        prod *= q
    return out


def _verify_zero_product(rows: list[list[int]], vectors: list[list[int]]) -> bool:
    """Exact check that A @ v == 0 for each integer vector v."""
    if not vectors:
        return True
    max_a = max((abs(x) for row in rows for x in row), default=0)
    max_v = max((abs(x) for v in vectors for x in v), default=0)
    k = len(rows[0]) if rows else 0
    if not rows or max_a == 0 or max_v == 0:
        return True
    bound = k * max_a * max_v
    if max_a < 2**20:
        a64 = np.array(rows, dtype=np.int64)
        for q in _fresh_verify_primes(bound):
            vm = np.array([[x % q for x in v] for v in vectors], dtype=np.int64).T
            if ((a64 % q) @ vm % q).any():
                return False
        return True
    for v in vectors:
        for row in rows:
            if sum(a * x for a, x in zip(row, v)):
                return False
    return True


def nullspace_rational(rows, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Certified basis of the rational kernel of an integer matrix.

    Accepts an int64 ndarray or a list of integer rows (arbitrary size
    entries).  The basis is in echelon-normalized form: one vector per free
    column f, with entry 1 at f and 0 at every other free column, free
    columns listed in increasing order.
    """
    if isinstance(rows, np.ndarray):
        a64: np.ndarray | None = rows.astype(np.int64, copy=False)
        rows_py = None
        nrows, ncols = a64.shape
    else:
        rows_py = [list(map(int, r)) for r in rows]
        nrows = len(rows_py)
        if ncols is None:
            if not rows_py:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows_py[0])
        fits64 = not rows_py or max(abs(x) for row in rows_py for x in row) < 2**62
        a64 = np.array(rows_py, dtype=np.int64) if fits64 and rows_py else None
    if nrows == 0:
        basis = []
        for f in range(ncols):
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            basis.append(tuple(v))
        return basis
    results: list[tuple[int, tuple[int, ...], np.ndarray, int]] = []

    def ensure(t: int):
        for p in SOLVE_PRIMES.get(t)[len(results):]:
            ap = a64 % p if a64 is not None else _rows_mod_p(rows_py, p, False)
            rank, pivots, rr = rref_mod_p(ap, p)
            results.append((rank, tuple(pivots), rr, p))

    t = 1
    while t <= _MAX_SOLVE_PRIMES:
        ensure(t)
        rmax = max(res[0] for res in results)
        cands = [res for res in results if res[0] == rmax]
        pivots = min(res[1] for res in cands)
        sel = [res for res in cands if res[1] == pivots]
        basis = _reconstruct_kernel(sel, pivots, ncols)
        if basis is not None:
            ints = []
            for v in basis:
                den = 1
                for x in v:
                    den = lcm(den, x.denominator)
                ints.append([int(x * den) for x in v])
            if _verify_zero_product_any(a64, rows_py, ints):
                return basis
        t *= 2
    raise ResourceLimitError("rational kernel did not reconstruct within the prime budget")


def _verify_zero_product_any(a64, rows_py, vectors: list[list[int]]) -> bool:
    if not vectors:
        return True
    if a64 is not None:
        max_a = int(np.abs(a64).max(initial=0))
        max_v = max((abs(x) for v in vectors for x in v), default=0)
        k = a64.shape[1]
        if max_a == 0 or max_v == 0:
            return True
        bound = k * max_a * max_v
        for q in _fresh_verify_primes(bound):
            vm = np.array([[x % q for x in v] for v in vectors], dtype=np.int64).T
            if ((a64 % q) @ vm % q).any():
                return False
        return True
    return _verify_zero_product(rows_py, vectors)


def _reconstruct_kernel(sel, pivots, ncols):
    free = [c for c in range(ncols) if c not in set(pivots)]
    primes = [res[3] for res in sel]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for j, pc in enumerate(pivots):
            residues = [int(res[2][j, f]) for res in sel]
            if len(primes) == 1:
                a, m = residues[0], primes[0]
            else:
                a, m = crt_combine(residues, primes)
            x = rational_reconstruct(a, m)
            if x is None:
                return None
            v[pc] = -x
        basis.append(tuple(v))
    return basis


# --- minimal polynomials ----------------------------------------------------


def _local_minpoly_mod_p(npmat: np.ndarray, v: np.ndarray, p: int) -> list[int]:
    z = npmat.shape[0]
    krylov = np.empty((z + 1, z), dtype=np.int64)
    krylov[0] = v % p
    for i in range(z):
        krylov[i + 1] = npmat @ krylov[i] % p
    # Krylov rows: the first dependent row index equals the rank.
    d, _, _ = rref_mod_p(krylov, p)
    aug = np.concatenate([krylov[:d].T % p, (-krylov[d] % p).reshape(z, 1)], axis=1)
    _, piv, rr = rref_mod_p(aug, p)
    assert d not in piv, "inconsistent Krylov dependency"
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    for j, pc in enumerate(piv):
        if pc < d:
            coeffs[pc] = int(rr[j, d])
    return pmod_trim(coeffs, p)


def _minpoly_mod_p(npmat: np.ndarray, p: int) -> list[int]:
    z = npmat.shape[0]
    m = [1]
    for i in range(z):
        if len(m) - 1 == z:
            break
        e = np.zeros(z, dtype=np.int64)
        e[i] = 1
        w = (m[-1] * e) % p
        for c in reversed(m[:-1]):
            w = (npmat @ w + c * e) % p
        # w = m(N) e_i; annihilating it extends m to lcm(m, local minpoly of e_i)
        if not w.any():
            continue
        loc = _local_minpoly_mod_p(npmat, w, p)
        m = pmod_trim(pmod_mul_int(m, loc, p), p)
    return m


def pmod_mul_int(f: list[int], g: list[int], p: int) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return out


def minpoly_degree_mod_p(mat: list[list[Fraction]], p: int) -> int:
    """Degree of the minimal polynomial mod p (a lower bound for the degree
    over Q when p avoids all denominators)."""
    nint, _den = _integerize(mat)
    npmat = np.array([[x % p for x in row] for row in nint], dtype=np.int64)
    return len(_minpoly_mod_p(npmat, p)) - 1


def minpoly_heuristic(mat: list[list[Fraction]], p: int | None = None):
    """Fast single-prime guess of the minimal polynomial; None if it does not
    reconstruct.  Not certified: callers must verify anything they build on."""
    if p is None:
        p = SOLVE_PRIMES.get(1)[0]
    nint, den = _integerize(mat)
    npmat = np.array([[x % p for x in row] for row in nint], dtype=np.int64)
    m = _minpoly_mod_p(npmat, p)
    d = len(m) - 1
    out = []
    for i, c in enumerate(m):
        x = rational_reconstruct(c, p)
        if x is None or x.denominator != 1:
            return None
        out.append(Fraction(int(x), den ** (d - i)))
    return out


def minpoly_exact_small(mat: list[list[Fraction]]) -> list[Fraction]:
    """Exact minimal polynomial by plain Krylov elimination; meant for small
    matrices where modular machinery would cost more than it saves."""
    z = len(mat)
    rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = [[Fraction(int(i == j)) for j in range(z)] for i in range(z)]
    k = 0
    while True:
        vec = [x for row in power for x in row]
        comb = [Fraction(0)] * k + [Fraction(1)]
        for pc, rvec, rcomb in rows:
            f = vec[pc]
            if f:
                vec = [a - f * b for a, b in zip(vec, rvec)]
                comb = [
                    a - f * (rcomb[i] if i < len(rcomb) else 0)
                    for i, a in enumerate(comb)
                ]
        nz = next((i for i, x in enumerate(vec) if x), None)
        if nz is None:
            return comb  # monic: the leading entry is never touched
        inv = 1 / vec[nz]
        rows.append((nz, [x * inv for x in vec], [x * inv for x in comb]))
        power = [
            [sum(mat[i][t] * power[t][j] for t in range(z)) for j in range(z)]
            for i in range(z)
        ]
        k += 1


def _integerize(mat) -> tuple[list[list[int]], int]:
    den = 1
    for row in mat:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in mat], den


def minpoly_rational(mat: list[list[Fraction]]) -> list[Fraction]:
    """Certified minimal polynomial (monic, coefficients low degree first)."""
    z = len(mat)
    nint, den = _integerize(mat)
    fits64 = max(abs(x) for row in nint for x in row) < 2**62
    results: list[tuple[list[int], int]] = []

    t = 1
    while t <= _MAX_SOLVE_PRIMES:
        for p in SOLVE_PRIMES.get(t)[len(results):]:
            npmat = _rows_mod_p(nint, p, fits64)
            results.append((_minpoly_mod_p(npmat, p), p))
        dmax = max(len(m) - 1 for m, _ in results)
        sel = [(m, p) for m, p in results if len(m) - 1 == dmax]
        coeffs: list[int] = []
        ok = True
        for i in range(dmax + 1):
            residues = [m[i] if i < len(m) else 0 for m, _ in sel]
            a, mm = crt_combine(residues, [p for _, p in sel])
            x = rational_reconstruct(a, mm)
            if x is None or x.denominator != 1:
                ok = False
                break
            coeffs.append(int(x))
        if ok and coeffs[-1] == 1 and _verify_minpoly(nint, coeffs):
            return [Fraction(c, den ** (dmax - i)) for i, c in enumerate(coeffs)]
        t *= 2
    raise ResourceLimitError("minimal polynomial did not reconstruct within the prime budget")


def _verify_minpoly(nint: list[list[int]], coeffs: list[int]) -> bool:
    z = len(nint)
    max_n = max((abs(x) for row in nint for x in row), default=0)
    max_c = max(abs(c) for c in coeffs)
    d = len(coeffs) - 1
    bound = (d + 1) * max_c * max(z * max_n, 1) ** d
    if max_n < 2**19:
        a64 = np.array(nint, dtype=np.int64)
        for q in _fresh_verify_primes(bound):
            acc = np.zeros((z, z), dtype=np.int64)
            nq = a64 % q
            for c in reversed(coeffs):
                acc = (nq @ acc + (c % q) * np.eye(z, dtype=np.int64)) % q
            if acc.any():
                return False
        return True
    acc = [[0] * z for _ in range(z)]
    for c in reversed(coeffs):
        nxt = [[sum(nint[i][k] * acc[k][j] for k in range(z)) for j in range(z)] for i in range(z)]
        for i in range(z):
            nxt[i][i] += c
        acc = nxt
    return not any(any(row) for row in acc)


# --- small exact helpers ----------------------------------------------------


def frac_rref(rows: list[list[Fraction]]) -> tuple[int, list[int], list[list[Fraction]]]:
    """Plain fraction Gaussian elimination; fine for small systems and used
    as an independent oracle for the modular path in tests."""
    a = [[Fraction(x) for x in row] for row in rows]
    m = len(a)
    k = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(k):
        if r == m:
            break
        sel = next((i for i in range(r, m) if a[i][c] != 0), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return r, pivots, a[:r]


def frac_nullspace(rows: list[list[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    if not rows:
        rank, pivots, rr = 0, [], []
    else:
        rank, pivots, rr = frac_rref(rows)
    basis = []
    pivset = set(pivots)
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for j, pc in enumerate(pivots):
            v[pc] = -rr[j][f]
        basis.append(tuple(v))
    return basis


class SpanSolver:
    """Expresses vectors in the span of a fixed independent family."""

    def __init__(self, vectors: list[list[Fraction]]):
        self.vectors = [list(v) for v in vectors]
        n = len(self.vectors)
        k = len(self.vectors[0]) if n else 0
        aug = [list(v) + [Fraction(int(i == j)) for j in range(n)] for i, v in enumerate(self.vectors)]
        rank, pivots, rr = frac_rref(aug)
        if rank != n:
            raise ValueError("family is not linearly independent")
        self.k = k
        self.pivots = [p for p in pivots if p < k]
        self.rref = rr

    def coordinates(self, target: list[Fraction]):
        """Coefficients c with sum c_i v_i = target, or None."""
        t = [Fraction(x) for x in target]
        coeff = [Fraction(0)] * len(self.vectors)
        for j, pc in enumerate(self.pivots):
            f = t[pc]
            if f == 0:
                continue
            row = self.rref[j]
            for i in range(self.k):
                t[i] -= f * row[i]
            for i in range(len(self.vectors)):
                coeff[i] += f * row[self.k + i]
        if any(x != 0 for x in t):
            return None
        return coeff


def det_int(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sel = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sel is None:
                return 0
            a[k], a[sel] = a[sel], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]
