import random
from fractions import Fraction

from twistcheck.cyclotomic import cyclotomic_polynomial
from twistcheck.polyfactor import factor_rational, is_irreducible_rational
from twistcheck.polys import poly_mul, poly_monic


def test_basic_factorizations():
    # (x^2 + x + 1)(x - 2)
    assert factor_rational([-2, -1, -1, 1]) == [
        ([Fraction(-2), Fraction(1)], 1),
        ([Fraction(1), Fraction(1), Fraction(1)], 1),
    ]
    assert is_irreducible_rational([1, 0, 0, 0, 1])  # x^4 + 1
    assert is_irreducible_rational([-5, 0, 1])
    assert not is_irreducible_rational([-1, 0, 1])


def test_multiplicities():
    f = poly_mul(poly_mul([-1, 1], [-1, 1]), [3, 1])
    assert factor_rational(f) == [
        ([Fraction(-1), Fraction(1)], 2),
        ([Fraction(3), Fraction(1)], 1),
    ]


def test_non_monic_input():
    # 6x^2 - x - 2 = (2x + 1)(3x - 2), reported as monic factors
    assert factor_rational([-2, -1, 6]) == [
        ([Fraction(-2, 3), Fraction(1)], 1),
        ([Fraction(1, 2), Fraction(1)], 1),
    ]


def test_cyclotomic_irreducibility():
    for n in (1, 2, 3, 8, 12, 13, 21, 25, 36):
        assert is_irreducible_rational(list(cyclotomic_polynomial(n))), n


def test_random_products_refactor():
    irreducibles = [
        [1, 1],  # x + 1
        [-2, 1],  # x - 2
        [1, 1, 1],  # x^2+x+1
        [-2, 0, 1],  # x^2-2
        [1, 0, 1],  # x^2+1
        [2, -1, 0, 1],  # x^3 - x + 2? check irreducible: no rational root
        [1, 1, 0, 1],  # x^3 + x + 1
    ]
    rng = random.Random(99)
    for _ in range(25):
        picks = rng.sample(range(len(irreducibles)), rng.randint(1, 3))
        f = [1]
        expected = []
        for idx in sorted(picks):
            mult = rng.randint(1, 2)
            g = irreducibles[idx]
            expected.append((poly_monic(g), mult))
            for _ in range(mult):
                f = poly_mul(f, g)
        result = factor_rational(f)
        assert sorted(result, key=str) == sorted(expected, key=str), picks


def test_degree_24_compositum_split():
    f = poly_mul(list(cyclotomic_polynomial(13)), list(cyclotomic_polynomial(21)))
    factors = factor_rational(f)
    assert sorted((len(g) - 1, m) for g, m in factors) == [(12, 1), (12, 1)]
