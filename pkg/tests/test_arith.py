import pytest

from twistcheck.arith import (
    Place,
    euler_phi,
    factorize,
    hilbert_symbol,
    is_prime,
    is_sum_of_three_squares,
    kronecker_symbol,
    legendre_symbol,
    multiplicative_order,
    ramified_places,
    squarefree_part,
)
from twistcheck.errors import InvalidInputError

OO = Place.infinite()


def naive_squarefree_part(d):
    """Independent oracle: strip the largest square divisor by search."""
    best = 1
    k = 1
    while k * k <= abs(d):
        if d % (k * k) == 0:
            best = k * k
        k += 1
    return d // best


def hilbert_by_search(a, b, p, k):
    """Exhaustive solvability of z^2 = a x^2 + b y^2 over Z/p^k, primitive
    solutions only."""
    mod = p**k
    for x in range(mod):
        for y in range(mod):
            for z in range(mod):
                if x % p == 0 and y % p == 0 and z % p == 0:
                    continue
                if (z * z - a * x * x - b * y * y) % mod == 0:
                    return 1
    return -1


def test_squarefree_part_examples():
    assert squarefree_part(1) == 1
    assert squarefree_part(12) == naive_squarefree_part(12) == 3
    assert squarefree_part(-18) == naive_squarefree_part(-18) == -2


def test_squarefree_part_rejects_zero():
    with pytest.raises(InvalidInputError):
        squarefree_part(0)


def test_squarefree_square_multiple_invariant():
    for d in range(1, 31):
        for m in range(-100, 101):
            if m == 0:
                continue
            assert squarefree_part(d * d * m) == squarefree_part(m)


def test_hilbert_symbol_examples():
    assert hilbert_symbol(-1, -1, OO) == -1
    assert hilbert_symbol(-1, -1, Place.finite(2)) == hilbert_by_search(-1, -1, 2, 6) == -1
    assert hilbert_symbol(2, 3, Place.finite(3)) == -1
    assert legendre_symbol(2, 3) == -1
    assert hilbert_by_search(2, 3, 3, 3) == -1


def test_hilbert_symbol_versus_small_searches():
    cases = [(-1, 3, 2), (3, 5, 5), (2, 5, 5), (-2, -5, 2), (5, 12, 3), (7, 11, 7)]
    for a, b, p in cases:
        k = 6 if p == 2 else 3
        assert hilbert_symbol(a, b, Place.finite(p)) == hilbert_by_search(a, b, p, k), (a, b, p)


def test_product_formula():
    for a in range(-50, 51):
        for b in range(-50, 51):
            if a == 0 or b == 0:
                continue
            places = {OO, Place.finite(2)}
            places.update(Place.finite(p) for p, _ in factorize(a * b))
            prod = 1
            for v in places:
                prod *= hilbert_symbol(a, b, v)
            assert prod == 1, (a, b)


def test_symmetry_and_bilinearity():
    values = [v for v in range(-12, 13) if v]
    places = [OO, Place.finite(2), Place.finite(3), Place.finite(5), Place.finite(7)]
    for a in values:
        for b in values:
            for v in places:
                assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
    for a in (-6, -1, 2, 3, 5):
        for b in (-5, -1, 2, 3):
            for c in (-3, 2, 7):
                for v in places:
                    assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)


def test_ramified_places_examples():
    assert ramified_places(1, 1) == frozenset()
    assert ramified_places(-1, -1) == frozenset({OO, Place.finite(2)})
    assert ramified_places(2, 3) == frozenset({Place.finite(2), Place.finite(3)})


def test_ramified_places_even_cardinality():
    for a in range(-20, 21):
        for b in range(-20, 21):
            if a and b:
                assert len(ramified_places(a, b)) % 2 == 0


def test_three_squares_examples():
    assert is_sum_of_three_squares(3)
    assert not is_sum_of_three_squares(7)
    assert not is_sum_of_three_squares(15)


def test_three_squares_search_agreement():
    reachable = set()
    n = 0
    while n * n <= 10000:
        m = 0
        while n * n + m * m <= 10000:
            k = 0
            while n * n + m * m + k * k <= 10000:
                reachable.add(n * n + m * m + k * k)
                k += 1
            m += 1
        n += 1
    for d in range(1, 10001):
        assert is_sum_of_three_squares(d, check_bound=0) == (d in reachable), d


def test_place_validation():
    with pytest.raises(InvalidInputError):
        Place.finite(6)
    assert Place.finite(2).p == 2
    assert OO.is_infinite


def test_misc_number_theory():
    assert [p for p in range(2, 20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert euler_phi(1) == 1 and euler_phi(12) == 4
    assert multiplicative_order(2, 5) == 4
    assert kronecker_symbol(5, 11) == legendre_symbol(5, 11)
    assert kronecker_symbol(8, 3) == legendre_symbol(8, 3)
