import random
from fractions import Fraction

import pytest

from twistcheck.arith import divisors, euler_phi
from twistcheck.cyclotomic import (
    CyclotomicElement,
    cyclotomic_polynomial,
    galois_apply,
    minimal_polynomial,
)
from twistcheck.errors import InvalidInputError
from twistcheck.polys import poly_evaluate, poly_mul


def test_cyclotomic_polynomial_examples():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)


def test_cyclotomic_product_identity():
    # x^n - 1 = prod over d | n of Phi_d: the recursive-division oracle
    for n in range(1, 41):
        prod = [1]
        for d in divisors(n):
            prod = poly_mul(prod, list(cyclotomic_polynomial(d)))
        expected = [-1] + [0] * (n - 1) + [1]
        assert prod == expected, n
        assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_roots_of_unity():
    for n in range(1, 41):
        z = CyclotomicElement.zeta(n)
        assert z**n == 1
        for k in range(1, n):
            assert z**k != 1, (n, k)


def random_element(rng, n, size=2):
    coeffs = [Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])) for _ in range(euler_phi(n))]
    return CyclotomicElement(n, coeffs)


def test_ring_axioms_sampled():
    rng = random.Random(42)
    for n in (3, 8, 12, 21, 40):
        for _ in range(6):
            a, b, c = (random_element(rng, n) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a


def test_mixed_conductor_arithmetic():
    z3, z4 = CyclotomicElement.zeta(3), CyclotomicElement.zeta(4)
    w = z3 * z4
    assert w.n == 12
    assert w**12 == 1
    for k in (1, 2, 3, 4, 6):
        assert w**k != 1


def test_galois_examples():
    z5 = CyclotomicElement.zeta(5)
    x = z5 + 2 * z5**3
    assert galois_apply(1, x) == x
    assert galois_apply(2, z5) == z5**2
    z7 = CyclotomicElement.zeta(7)
    assert galois_apply(2, galois_apply(3, z7)) == galois_apply(6, z7)


def test_galois_is_ring_homomorphism():
    rng = random.Random(9)
    for n in (5, 8, 15, 40):
        units = [t for t in range(1, n) if __import__("math").gcd(t, n) == 1]
        for _ in range(5):
            a, b = random_element(rng, n), random_element(rng, n)
            t = rng.choice(units)
            s = rng.choice(units)
            assert galois_apply(t, a + b) == galois_apply(t, a) + galois_apply(t, b)
            assert galois_apply(t, a * b) == galois_apply(t, a) * galois_apply(t, b)
            assert galois_apply(s, galois_apply(t, a)) == galois_apply(s * t % n, a)


def test_galois_rejects_non_units():
    with pytest.raises(InvalidInputError):
        galois_apply(5, CyclotomicElement.zeta(10))


def test_minimal_polynomial_examples():
    zero = CyclotomicElement(5, [0])
    assert minimal_polynomial(zero) == [Fraction(0), Fraction(1)]
    z5 = CyclotomicElement.zeta(5)
    eta = z5 + z5**4
    assert minimal_polynomial(eta) == [Fraction(-1), Fraction(1), Fraction(1)]
    full = z5 + z5**2 + z5**3 + z5**4
    assert minimal_polynomial(full) == [Fraction(1), Fraction(1)]


def test_minimal_polynomial_properties():
    rng = random.Random(17)
    for n in (7, 9, 12, 20):
        for _ in range(4):
            x = random_element(rng, n)
            mp = minimal_polynomial(x)
            value = poly_evaluate(mp, x)
            if isinstance(value, CyclotomicElement):
                assert value.is_zero()
            else:
                assert value == 0
            assert euler_phi(n) % (len(mp) - 1) == 0
