"""Factorization of univariate polynomials over Q.

Pipeline for a monic squarefree integer polynomial: Berlekamp factorization
modulo a good small prime (chosen to minimize the modular factor count),
Hensel lifting past the Mignotte bound, then subset recombination.  This is
deterministic end to end.  Rational inputs are scaled and squarefree-reduced
first.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import isqrt

import numpy as np

from .errors import ResourceLimitError
from .polys import (
    pmod_divmod,
    pmod_gcd,
    pmod_mul,
    pmod_pow,
    pmod_trim,
    poly_derivative,
    poly_divmod,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_to_integer,
    poly_trim,
)
from ._kernels import rref_mod_p

_FACTOR_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_MAX_RECOMBINE_FACTORS = 24


def _pmod_xgcd(f: list[int], g: list[int], p: int):
    """(s, t, d) with s f + t g = d (monic gcd) over F_p."""
    r0, r1 = pmod_trim(f[:], p), pmod_trim(g[:], p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pmod_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, pmod_trim([a - b for a, b in _pad(s0, pmod_mul(q, s1, p))], p)
        t0, t1 = t1, pmod_trim([a - b for a, b in _pad(t0, pmod_mul(q, t1, p))], p)
    inv = pow(r0[-1], p - 2, p)
    return (
        [c * inv % p for c in s0],
        [c * inv % p for c in t0],
        [c * inv % p for c in r0],
    )


def _pad(f: list[int], g: list[int]):
    n = max(len(f), len(g))
    return zip(f + [0] * (n - len(f)), g + [0] * (n - len(g)))


def _berlekamp_factor_count(f: list[int], p: int) -> int:
    """Dimension of the Berlekamp subalgebra = number of irreducible factors."""
    n = len(f) - 1
    rows = []
    xp = pmod_pow([0, 1], p, f, p)
    power = [1]
    for i in range(n):
        row = (power + [0] * n)[:n]
        row[i] = (row[i] - 1) % p
        rows.append(row)
        power = pmod_divmod(pmod_mul(power, xp, p), f, p)[1]
    rank, _, _ = rref_mod_p(np.array(rows, dtype=np.int64).T % p, p)
    return n - rank


def _berlekamp_basis(f: list[int], p: int) -> list[list[int]]:
    n = len(f) - 1
    xp = pmod_pow([0, 1], p, f, p)
    rows = []
    power = [1]
    for i in range(n):
        row = (power + [0] * n)[:n]
        row[i] = (row[i] - 1) % p
        rows.append(row)
        power = pmod_divmod(pmod_mul(power, xp, p), f, p)[1]
    mat = np.array(rows, dtype=np.int64).T % p
    rank, pivots, rr = rref_mod_p(mat, p)
    basis = []
    pivset = set(pivots)
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for j, pc in enumerate(pivots):
            v[pc] = (-int(rr[j, free])) % p
        basis.append(pmod_trim(v, p))
    return basis


def factor_mod_p(f: list[int], p: int) -> list[list[int]]:
    """Monic irreducible factors of a squarefree monic f over F_p (Berlekamp)."""
    f = pmod_trim([c % p for c in f], p)
    basis = _berlekamp_basis(f, p)
    r = len(basis)
    factors = [f]
    if r == 1:
        return factors
    for v in basis:
        if len(factors) == r:
            break
        if len(v) <= 1:
            continue
        nxt = []
        for g in factors:
            if len(g) - 1 == 1:
                nxt.append(g)
                continue
            pieces = []
            rem = g
            for c in range(p):
                if len(rem) - 1 < 1:
                    break
                shifted = v[:]
                shifted[0] = (shifted[0] - c) % p
                d = pmod_gcd(rem, pmod_trim(shifted, p), p)
                if 1 <= len(d) - 1 < len(rem) - 1:
                    pieces.append(d)
                    rem = pmod_divmod(rem, d, p)[0]
                elif len(d) - 1 == len(rem) - 1:
                    break
            if len(rem) - 1 >= 1:
                pieces.append(rem)
            nxt.extend(pieces)
        factors = nxt
    assert len(factors) == r, "Berlekamp split incomplete"
    return sorted(factors)


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step: from f = g h and s g + t h = 1 (mod m)
    to the same congruences mod m^2.  All polynomials integer, g monic."""
    mm = m * m

    def red(poly):
        return poly_trim([c % mm for c in poly])

    def sym(poly):
        return [c - mm if c > mm // 2 else c for c in poly]

    def mul(a, b):
        return red(_int_mul(a, b))

    e = red(_int_sub(f, _int_mul(g, h)))
    q, r = _int_divmod_mod(mul(s, e), h, mm)
    g1 = red(_int_add(g, _int_add(mul(t, e), mul(q, g))))
    h1 = red(_int_add(h, r))
    e2 = red(_int_sub(_int_add(mul(s, g1), mul(t, h1)), [1]))
    q2, r2 = _int_divmod_mod(mul(s, e2), h1, mm)
    s1 = red(_int_sub(s, r2))
    t1 = red(_int_sub(t, _int_add(mul(t, e2), mul(q2, g1))))
    return sym(g1), sym(h1), sym(s1), sym(t1)


def _int_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_add(a, b):
    return [x + y for x, y in _pad(a, b)]


def _int_sub(a, b):
    return [x - y for x, y in _pad(a, b)]


def _int_divmod_mod(f, g, m):
    """Division with remainder mod m by a polynomial with unit leading coeff."""
    f = [c % m for c in f]
    g = [c % m for c in g]
    while g and g[-1] % m == 0:
        g.pop()
    inv = pow(g[-1], -1, m)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g):
        if f[-1] % m == 0:
            f.pop()
            continue
        d = len(f) - len(g)
        c = f[-1] * inv % m
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = (f[d + i] - c * b) % m
        f.pop()
    return poly_trim(q), poly_trim(f)


def _hensel_lift_tree(f: list[int], factors_p: list[list[int]], p: int, target: int) -> list[list[int]]:
    """Lift f = prod(factors) from mod p to mod p^k >= target (f monic)."""
    if len(factors_p) == 1:
        m = p
        while m < target:
            m *= m
        return [[c % m for c in f]]
    half = len(factors_p) // 2
    left, right = factors_p[:half], factors_p[half:]
    g = [1]
    for fac in left:
        g = pmod_mul(g, fac, p)
    h = [1]
    for fac in right:
        h = pmod_mul(h, fac, p)
    s, t, d = _pmod_xgcd(g, h, p)
    assert len(d) == 1, "modular factors not coprime"
    m = p
    gg, hh, ss, tt = g, h, s, t
    while m < target:
        gg, hh, ss, tt = _hensel_step(f, gg, hh, ss, tt, m)
        m *= m
    out = []
    out.extend(_hensel_lift_tree(gg, left, p, target))
    out.extend(_hensel_lift_tree(hh, right, p, target))
    return out


def _mignotte_bound(f: list[int]) -> int:
    norm = isqrt(sum(c * c for c in f)) + 1
    return (2 ** (len(f) - 1)) * norm


def factor_monic_squarefree_int(f: list[int]) -> list[list[int]]:
    """Irreducible monic integer factors of a monic squarefree integer poly."""
    f = poly_trim([int(c) for c in f])
    assert f and f[-1] == 1
    n = len(f) - 1
    if n <= 1:
        return [f]
    best = None
    for p in _FACTOR_PRIMES:
        fp = pmod_trim([c % p for c in f], p)
        if len(fp) - 1 != n:
            continue
        if len(pmod_gcd(fp, pmod_trim([(i * c) % p for i, c in enumerate(f)][1:], p), p)) != 1:
            continue
        r = _berlekamp_factor_count(f, p)
        if best is None or r < best[1]:
            best = (p, r)
        if r == 1:
            return [f]
        if r <= 3:
            break
    if best is None:
        raise ResourceLimitError("no good factorization prime below 50")
    p, r = best
    modular = factor_mod_p(f, p)
    if len(modular) > _MAX_RECOMBINE_FACTORS:
        raise ResourceLimitError("too many modular factors to recombine")
    bound = _mignotte_bound(f)
    target = 2 * bound + 1
    lifted = _hensel_lift_tree(f, modular, p, target)
    m = p
    while m < target:
        m *= m

    def sym(poly):
        return [c % m - (m if c % m > m // 2 else 0) for c in poly]

    pool = [poly_trim(sym(g)) for g in lifted]
    found = []
    fq = f
    size = 1
    while pool and size <= len(pool) // 2:
        hit = None
        for subset in combinations(range(len(pool)), size):
            g = [1]
            for i in subset:
                g = [c % m for c in _int_mul(g, pool[i])]
            g = poly_trim(sym(g))
            if fq[0] != 0 and g[0] != 0 and fq[0] % g[0] != 0:
                continue
            q, rem = poly_divmod(fq, g)
            if not rem and all(Fraction(c).denominator == 1 for c in q):
                hit = (subset, g, [int(c) for c in q])
                break
        if hit is None:
            size += 1
            continue
        subset, g, q = hit
        found.append(g)
        fq = q
        pool = [pool[i] for i in range(len(pool)) if i not in subset]
        size = 1
        if len(pool) == 1:
            break
    if pool:
        found.append(fq)
    assert sum(len(g) - 1 for g in found) == n
    return sorted(found)


def factor_rational(f) -> list[tuple[list[Fraction], int]]:
    """Monic irreducible factors with multiplicities of a nonzero rational
    polynomial (the constant content is discarded)."""
    f = poly_trim([Fraction(c) for c in f])
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) == 1:
        return []
    f = poly_monic(f)
    sf = poly_divmod(f, poly_gcd(f, poly_derivative(f)))[0]
    fint, _ = poly_to_integer(poly_monic(sf))
    monic_int = _make_monic_int(fint)
    out = []
    for g_scaled in factor_monic_squarefree_int(monic_int[0]):
        g = _unscale(g_scaled, monic_int[1])
        mult = 0
        rem: list = []
        work = f
        while not rem:
            q, rem = poly_divmod(work, g)
            if not rem:
                mult += 1
                work = q
        out.append((g, mult))
    assert sum((len(g) - 1) * m for g, m in out) == len(f) - 1
    return sorted(out, key=lambda t: (len(t[0]), [str(c) for c in t[0]]))


def _make_monic_int(f: list[int]) -> tuple[list[int], int]:
    """Replace f(x) by lc^(n-1) f(x/lc), a monic integer polynomial whose
    roots are lc times the roots of f.  Returns (monic poly, lc)."""
    lc = f[-1]
    n = len(f) - 1
    scaled = [f[i] * lc ** (n - 1 - i) for i in range(n)] + [1]
    return scaled, lc


def _unscale(g: list[int], lc: int) -> list[Fraction]:
    n = len(g) - 1
    return poly_monic([Fraction(c, lc ** (n - i)) if i < n else Fraction(1) for i, c in enumerate(g)])


def is_irreducible_rational(f) -> bool:
    factors = factor_rational(f)
    return len(factors) == 1 and factors[0][1] == 1
