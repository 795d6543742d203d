"""Integer arithmetic and local symbols over Q.

Everything here is exact: trial-division factorization, Legendre/Kronecker
symbols, Hilbert symbols at all places of Q, ramification sets of quaternion
algebras (a,b), and the sum-of-three-squares test.  All functions are pure
and safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .errors import InvalidInputError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| by trial division, as (prime, exponent) pairs."""
    if n == 0:
        raise InvalidInputError("cannot factorize 0")
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            e += 1
            n //= d
        if e:
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def squarefree_part(d: int) -> int:
    """Squarefree integer of the same sign with d / result a perfect square."""
    if d == 0:
        raise InvalidInputError("squarefree_part(0) is undefined")
    out = -1 if d < 0 else 1
    for p, e in factorize(d):
        if e % 2:
            out *= p
    return out


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a finite prime or the archimedean place.

    The archimedean place is Place(0); finite places carry their prime.
    """

    p: int

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise InvalidInputError(f"{self.p} is not prime")

    @property
    def is_infinite(self) -> bool:
        return self.p == 0

    @staticmethod
    def infinite() -> "Place":
        return Place(0)

    @staticmethod
    def finite(p: int) -> "Place":
        if p == 0:
            raise InvalidInputError("finite place needs a prime")
        return Place(p)

    def __repr__(self):
        return "oo" if self.p == 0 else f"v{self.p}"


def legendre_symbol(a: int, p: int) -> int:
    """(a/p) for an odd prime p; 0 when p | a."""
    if p == 2 or not is_prime(p):
        raise InvalidInputError(f"legendre_symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n > 0."""
    if n <= 0:
        raise InvalidInputError("kronecker_symbol defined here for n > 0 only")
    if n == 1:
        return 1
    out = 1
    for p, e in factorize(n):
        if p == 2:
            if a % 2 == 0:
                return 0
            s = 1 if a % 8 in (1, 7) else -1
        else:
            s = legendre_symbol(a, p)
            if s == 0:
                return 0
        if e % 2:
            out *= s
    return out


def _two_adic_split(n: int) -> tuple[int, int]:
    """n = 2^alpha * u with u odd."""
    alpha = 0
    while n % 2 == 0:
        n //= 2
        alpha += 1
    return alpha, n


def _padic_split(n: int, p: int) -> tuple[int, int]:
    alpha = 0
    while n % p == 0:
        n //= p
        alpha += 1
    return alpha, n


def hilbert_symbol(a: int, b: int, v: Place) -> int:
    """Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
    solution over the completion of Q at v."""
    if a == 0 or b == 0:
        raise InvalidInputError("hilbert_symbol needs nonzero arguments")
    if v.is_infinite:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    if p == 2:
        alpha, u = _two_adic_split(a)
        beta, w = _two_adic_split(b)
        eps_u, eps_w = (u - 1) // 2, (w - 1) // 2
        om_u, om_w = (u * u - 1) // 8, (w * w - 1) // 8
        exp = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if exp % 2 else 1
    alpha, u = _padic_split(a, p)
    beta, w = _padic_split(b, p)
    s = 1
    if (alpha * beta) % 2 and (p - 1) // 2 % 2:
        s = -s
    if beta % 2:
        s *= legendre_symbol(u, p)
    if alpha % 2:
        s *= legendre_symbol(w, p)
    return s


def candidate_places(a: int, b: int) -> list[Place]:
    """The places where (a,b) can possibly ramify: oo and primes dividing 2ab."""
    primes = {2}
    for n in (a, b):
        primes.update(p for p, _ in factorize(n))
    return [Place.infinite()] + [Place.finite(p) for p in sorted(primes)]


def ramified_places(a: int, b: int) -> frozenset[Place]:
    """Set of places v with (a,b)_v = -1."""
    if a == 0 or b == 0:
        raise InvalidInputError("ramified_places needs nonzero arguments")
    return frozenset(v for v in candidate_places(a, b) if hilbert_symbol(a, b, v) == -1)


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidInputError("euler_phi needs n >= 1")
    out = n
    for p, _ in factorize(n) if n > 1 else []:
        out = out // p * (p - 1)
    return out


def divisors(n: int) -> list[int]:
    if n < 1:
        raise InvalidInputError("divisors needs n >= 1")
    out = [1]
    for p, e in factorize(n) if n > 1 else []:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def multiplicative_order(a: int, n: int) -> int:
    from math import gcd

    if n < 1 or gcd(a, n) != 1:
        raise InvalidInputError("multiplicative_order needs gcd(a, n) = 1")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


THREE_SQUARES_CHECK_BOUND = 4096


@lru_cache(maxsize=4)
def _three_square_sums(bound: int) -> frozenset[int]:
    reachable = set()
    x = 0
    while x * x <= bound:
        y = x
        while x * x + y * y <= bound:
            z = y
            while x * x + y * y + z * z <= bound:
                reachable.add(x * x + y * y + z * z)
                z += 1
            y += 1
        x += 1
    return frozenset(reachable)


def is_sum_of_three_squares(d: int, check_bound: int = THREE_SQUARES_CHECK_BOUND) -> bool:
    """True iff d = x^2 + y^2 + z^2 for integers x, y, z.

    Uses the 4^a(8b+7) exclusion; for d <= check_bound the answer is also
    confirmed against an exhaustive search and a mismatch raises.
    """
    if d < 1:
        raise InvalidInputError("is_sum_of_three_squares needs d >= 1")
    m = d
    while m % 4 == 0:
        m //= 4
    closed = m % 8 != 7
    if d <= check_bound:
        searched = d in _three_square_sums(check_bound)
        if searched != closed:
            raise AssertionError(f"three-squares forms disagree at d={d}")
    return closed
