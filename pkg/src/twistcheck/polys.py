"""Dense univariate polynomial arithmetic.

Polynomials are coefficient lists, lowest degree first, over Fraction/int
(exact) or over Z/p (the *_mod_p family).  The zero polynomial is [].
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


def poly_trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_degree(f: list) -> int:
    return len(f) - 1


def poly_add(f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]
    return poly_trim(out)


def poly_sub(f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)]
    return poly_trim(out)


def poly_scale(f: list, c) -> list:
    if c == 0:
        return []
    return [c * a for a in f]


def poly_mul(f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(f: list, g: list) -> tuple[list, list]:
    """Division with remainder over a field (Fraction coefficients)."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = [Fraction(a) for a in f]
    g = [Fraction(a) for a in g]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lead = g[-1]
    while len(f) >= len(g) and poly_trim(f[:]):
        if f[-1] == 0:
            f.pop()
            continue
        d = len(f) - len(g)
        c = f[-1] / lead
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] -= c * b
        f.pop()
    return poly_trim(q), poly_trim(f)


def poly_mod(f: list, g: list) -> list:
    return poly_divmod(f, g)[1]


def poly_evaluate(f: list, x):
    out = 0
    for a in reversed(f):
        out = out * x + a
    return out


def poly_derivative(f: list) -> list:
    return poly_trim([i * a for i, a in enumerate(f)][1:])


def poly_monic(f: list) -> list:
    if not f:
        return []
    lead = Fraction(f[-1])
    return [Fraction(a) / lead for a in f]


def poly_gcd(f: list, g: list) -> list:
    """Monic gcd over Q."""
    a, b = [Fraction(x) for x in f], [Fraction(x) for x in g]
    while poly_trim(b[:]):
        a, b = b, poly_mod(a, b)
    a = poly_trim(a)
    return poly_monic(a)


def poly_content(f: list[int]) -> int:
    c = 0
    for a in f:
        c = int_gcd(c, abs(a))
    return c if c else 1


def poly_primitive(f: list[int]) -> list[int]:
    c = poly_content(f)
    return [a // c for a in f]


def poly_to_integer(f: list) -> tuple[list[int], int]:
    """Clear denominators: returns (integer poly, common denominator)."""
    den = 1
    for a in f:
        den = den * Fraction(a).denominator // int_gcd(den, Fraction(a).denominator)
    return [int(Fraction(a) * den) for a in f], den


def poly_xgcd(f: list, g: list) -> tuple[list, list, list]:
    """(s, t, d) over Q with s*f + t*g = d, d the monic gcd."""
    r0, r1 = [Fraction(x) for x in f], [Fraction(x) for x in g]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while poly_trim(r1[:]):
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    r0 = poly_trim(r0)
    lead = r0[-1]
    return (
        [c / lead for c in s0],
        [c / lead for c in t0],
        [c / lead for c in r0],
    )


# --- arithmetic over Z/p ---------------------------------------------------


def pmod_trim(f: list[int], p: int) -> list[int]:
    f = [a % p for a in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def pmod_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return pmod_trim(out, p)


def pmod_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError
    f = [a % p for a in f]
    g = [a % p for a in g]
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g):
        if f[-1] % p == 0:
            f.pop()
            continue
        d = len(f) - len(g)
        c = f[-1] * inv % p
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = (f[d + i] - c * b) % p
        f.pop()
    return pmod_trim(q, p), pmod_trim(f, p)


def pmod_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    a, b = pmod_trim(f[:], p), pmod_trim(g[:], p)
    while b:
        a, b = b, pmod_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def pmod_lcm(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    d = pmod_gcd(f, g, p)
    q, r = pmod_divmod(pmod_mul(f, g, p), d, p)
    assert not r
    return q


def pmod_pow(f: list[int], e: int, modulus: list[int], p: int) -> list[int]:
    out = [1]
    base = pmod_divmod(f, modulus, p)[1]
    while e:
        if e & 1:
            out = pmod_divmod(pmod_mul(out, base, p), modulus, p)[1]
        base = pmod_divmod(pmod_mul(base, base, p), modulus, p)[1]
        e >>= 1
    return out
