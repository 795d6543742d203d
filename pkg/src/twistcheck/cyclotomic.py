"""Exact arithmetic in cyclotomic fields Q(mu_n).

Elements are coefficient vectors in the power basis 1, z, ..., z^(phi(n)-1)
modulo the n-th cyclotomic polynomial, with Fraction coefficients.  Elements
carry their own conductor; binary operations lift both sides to the lcm.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .arith import divisors, euler_phi
from .errors import InvalidInputError
from .polys import poly_divmod, poly_trim
from ._kernels.exact import SpanSolver


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first (monic, degree phi(n))."""
    if n < 1:
        raise InvalidInputError("conductor must be >= 1")
    f = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d == n:
            continue
        q, r = poly_divmod(f, list(cyclotomic_polynomial(d)))
        assert not r
        f = q
    return tuple(int(c) for c in f)


def _reduce_mod_phi(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = list(cyclotomic_polynomial(n))
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    for k in range(len(c) - 1, deg - 1, -1):
        f = c[k]
        if f == 0:
            continue
        for i, a in enumerate(phi):
            c[k - deg + i] -= f * a
    c = c[:deg]
    c += [Fraction(0)] * (deg - len(c))
    return tuple(c)


class CyclotomicElement:
    """An element of Q(mu_n) in the power basis modulo Phi_n."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        if n < 1:
            raise InvalidInputError("conductor must be >= 1")
        self.n = n
        deg = euler_phi(n)
        c = [Fraction(x) for x in coeffs]
        if len(c) > deg:
            self.coeffs = _reduce_mod_phi(c, n)
        else:
            self.coeffs = tuple(c + [Fraction(0)] * (deg - len(c)))

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zeta(n: int, k: int = 1) -> "CyclotomicElement":
        k %= n
        coeffs = [Fraction(0)] * n
        coeffs[k] = Fraction(1)
        return CyclotomicElement(n, coeffs)

    @staticmethod
    def from_rational(x) -> "CyclotomicElement":
        return CyclotomicElement(1, [Fraction(x)])

    # -- conductor handling ---------------------------------------------------

    def lift(self, m: int) -> "CyclotomicElement":
        """The same element viewed in Q(mu_m); requires n | m."""
        if m % self.n:
            raise InvalidInputError(f"cannot lift conductor {self.n} into {m}")
        if m == self.n:
            return self
        step = m // self.n
        coeffs = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            coeffs[i * step] += c
        return CyclotomicElement(m, coeffs)

    def _pair(self, other: "CyclotomicElement"):
        m = lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        a, b = self._pair(other)
        return CyclotomicElement(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self._pair(other)
        deg = len(a.coeffs)
        out = [Fraction(0)] * (2 * deg - 1 if deg else 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
        return CyclotomicElement(a.n, _reduce_mod_phi(out, a.n))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInputError("negative powers not supported")
        out = CyclotomicElement.from_rational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInputError("element is not rational")
        return self.coeffs[0]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*z{self.n}^{i}" if c != 1 else f"z{self.n}^{i}")
        return " + ".join(terms) if terms else "0"


def _coerce(x) -> CyclotomicElement:
    if isinstance(x, CyclotomicElement):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicElement.from_rational(x)
    raise TypeError(f"cannot coerce {type(x)!r} into a cyclotomic element")


def galois_apply(t: int, x: CyclotomicElement) -> CyclotomicElement:
    """Image of x under the automorphism zeta -> zeta^t of Q(mu_n)."""
    if gcd(t, x.n) != 1:
        raise InvalidInputError(f"{t} is not a unit modulo {x.n}")
    coeffs = [Fraction(0)] * x.n
    for i, c in enumerate(x.coeffs):
        coeffs[(t * i) % x.n] += c
    return CyclotomicElement(x.n, coeffs)


def minimal_polynomial(x: CyclotomicElement) -> list[Fraction]:
    """Monic minimal polynomial of x over Q, coefficients lowest degree first.

    Found as the first linear dependency among 1, x, x^2, ...
    """
    vectors = []
    power = CyclotomicElement.from_rational(1).lift(x.n)
    while True:
        vec = list(power.coeffs)
        if vectors:
            coords = SpanSolver(vectors).coordinates(vec)
            if coords is not None:
                return [-c for c in coords] + [Fraction(1)]
        vectors.append(vec)
        power = power * x
