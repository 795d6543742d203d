"""Fields and quaternion algebras that can occur as endomorphism algebras.

Abelian number fields are conductor/subgroup pairs: the field is the fixed
field of H <= (Z/n)^* inside Q(mu_n), normalized to minimal conductor.  All
containment, intersection and local-degree questions reduce to subgroup
arithmetic, so the main decision path never factors a polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .arith import (
    Place,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    kronecker_symbol,
    multiplicative_order,
    ramified_places,
    squarefree_part,
)
from .cyclotomic import CyclotomicElement, minimal_polynomial
from .errors import InvalidInputError, UnsupportedError


# --- subgroup arithmetic in (Z/n)^* -----------------------------------------


def units_mod(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [u for u in range(1, n) if gcd(u, n) == 1]


def subgroup_closure(n: int, gens) -> frozenset[int]:
    gens = [g % n for g in gens]
    for g in gens:
        if n > 1 and gcd(g, n) != 1:
            raise InvalidInputError(f"{g} is not a unit modulo {n}")
    # incremental closure: out stays a subgroup, each genuinely new generator
    # adds the cosets out * g^k, so redundant generators cost O(1)
    out = {1 % n}
    for g in gens:
        if g in out:
            continue
        new = set(out)
        t = g
        while t not in out:
            new.update(h * t % n for h in out)
            t = t * g % n
        out = new
    return frozenset(out)


@lru_cache(maxsize=None)
def all_subgroups(n: int) -> tuple[frozenset[int], ...]:
    """Every subgroup of (Z/n)^*, by closing cyclic subgroups under joins."""
    units = units_mod(n)
    subs = {frozenset({1 % n})}
    cyclic = {subgroup_closure(n, [u]) for u in units}
    subs |= cyclic
    changed = True
    while changed:
        changed = False
        for a in list(subs):
            for c in cyclic:
                j = subgroup_closure(n, list(a | c))
                if j not in subs:
                    subs.add(j)
                    changed = True
    return tuple(sorted(subs, key=lambda s: (len(s), sorted(s))))


# --- descriptors -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class AbelianFieldDesc:
    """The fixed field of `subgroup` <= (Z/conductor)^* inside Q(mu_conductor)."""

    conductor: int
    subgroup: tuple[int, ...]

    @staticmethod
    def make(n: int, gens) -> "AbelianFieldDesc":
        if n < 1:
            raise InvalidInputError("conductor must be >= 1")
        h = subgroup_closure(n, gens)
        for m in divisors(n):
            ker = frozenset(u for u in units_mod(n) if u % m == 1 % m)
            if ker <= h:
                image = frozenset(u % m for u in h)
                desc = AbelianFieldDesc(m, tuple(sorted(image)))
                assert euler_phi(m) % len(image) == 0
                assert euler_phi(m) // len(image) == euler_phi(n) // len(h)
                return desc
        raise AssertionError("unreachable: m = n always qualifies")

    @staticmethod
    def rationals() -> "AbelianFieldDesc":
        return AbelianFieldDesc(1, (0,))

    @staticmethod
    def full_cyclotomic(n: int) -> "AbelianFieldDesc":
        return AbelianFieldDesc.make(n, [])

    @property
    def degree(self) -> int:
        return euler_phi(self.conductor) // len(self.subgroup)

    def describe(self) -> dict:
        return {
            "type": "abelian_field",
            "conductor": self.conductor,
            "subgroup": list(self.subgroup),
            "degree": self.degree,
        }


@dataclass(frozen=True)
class RationalField:
    def describe(self) -> dict:
        return {"type": "Q"}


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1) or squarefree_part(self.d) != self.d:
            raise InvalidInputError(f"{self.d} is not a valid squarefree discriminant base")

    def describe(self) -> dict:
        return {"type": "quadratic", "d": self.d}


@dataclass(frozen=True)
class AbelianField:
    desc: AbelianFieldDesc

    def describe(self) -> dict:
        return self.desc.describe()


@dataclass(frozen=True)
class NonGaloisQuarticCM:
    """A non-Galois quartic CM field, known only through its unique (real)
    quadratic subfield Q(sqrt(d0))."""

    d0: int

    def __post_init__(self):
        if self.d0 <= 1 or squarefree_part(self.d0) != self.d0:
            raise InvalidInputError("d0 must be a squarefree integer > 1")

    def describe(self) -> dict:
        return {"type": "nongalois_quartic_cm", "d0": self.d0}


@dataclass(frozen=True)
class QuaternionAlgebraQ:
    """The quaternion algebra (a, b) over Q; must be a division algebra."""

    a: int
    b: int
    ramified: frozenset[Place] = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise InvalidInputError("quaternion parameters must be nonzero")
        ram = ramified_places(self.a, self.b)
        if not ram:
            raise InvalidInputError(f"({self.a},{self.b}) is split, not a division algebra")
        assert len(ram) % 2 == 0
        object.__setattr__(self, "ramified", ram)

    def describe(self) -> dict:
        return {
            "type": "quaternion",
            "a": self.a,
            "b": self.b,
            "ramified_at": sorted((("oo" if v.is_infinite else v.p) for v in self.ramified), key=str),
        }


FieldDescriptor = RationalField | QuadraticField | AbelianField | NonGaloisQuarticCM
DivisionAlgebraDesc = FieldDescriptor | QuaternionAlgebraQ


def field_degree(f: FieldDescriptor) -> int:
    if isinstance(f, RationalField):
        return 1
    if isinstance(f, QuadraticField):
        return 2
    if isinstance(f, AbelianField):
        return f.desc.degree
    if isinstance(f, NonGaloisQuarticCM):
        return 4
    raise UnsupportedError(f"not a field descriptor: {f!r}")


def algebra_dimension(d: DivisionAlgebraDesc) -> int:
    if isinstance(d, QuaternionAlgebraQ):
        return 4
    return field_degree(d)


def quadratic_descriptor(d: int) -> AbelianFieldDesc:
    """Conductor/subgroup form of Q(sqrt(d))."""
    d = squarefree_part(d)
    if d == 1:
        return AbelianFieldDesc.rationals()
    disc = d if d % 4 == 1 else 4 * d
    n = abs(disc)
    h = [u for u in units_mod(n) if kronecker_symbol(disc, u) == 1]
    desc = AbelianFieldDesc.make(n, h)
    assert desc.degree == 2
    return desc


def to_abelian(f: FieldDescriptor) -> AbelianFieldDesc:
    if isinstance(f, RationalField):
        return AbelianFieldDesc.rationals()
    if isinstance(f, QuadraticField):
        return quadratic_descriptor(f.d)
    if isinstance(f, AbelianField):
        return AbelianFieldDesc.make(f.desc.conductor, f.desc.subgroup)
    raise UnsupportedError(f"{f!r} has no abelian descriptor")


# --- subfields and intersections ---------------------------------------------


def subfields(f: AbelianFieldDesc) -> list[AbelianFieldDesc]:
    """All subfields, one per subgroup of (Z/n)^* containing H."""
    n = f.conductor
    h = frozenset(f.subgroup)
    out = []
    for s in all_subgroups(n):
        if h <= s:
            out.append(AbelianFieldDesc.make(n, list(s)))
    return sorted(set(out), key=lambda d: (d.degree, d.conductor, d.subgroup))


def intersect_with_cyclotomic(f: FieldDescriptor, n: int) -> AbelianFieldDesc:
    """Descriptor of F intersected with Q(mu_n)."""
    if n < 1:
        raise InvalidInputError("conductor must be >= 1")
    if isinstance(f, NonGaloisQuarticCM):
        quad = quadratic_descriptor(f.d0)
        inter = _intersect_abelian(quad, n)
        return inter if inter.degree == 2 else AbelianFieldDesc.rationals()
    return _intersect_abelian(to_abelian(f), n)


def _intersect_abelian(f: AbelianFieldDesc, n: int) -> AbelianFieldDesc:
    # F lies in Q(mu_a), and Q(mu_a) meets Q(mu_n) in Q(mu_gcd(a,n)), so the
    # intersection only sees the gcd part of n.
    n = gcd(f.conductor, n) if f.conductor > 1 else 1
    big = _lcm(f.conductor, n)
    lifted = lift_subgroup(f, big)
    ker_n = [u for u in units_mod(big) if u % n == 1 % n]
    return AbelianFieldDesc.make(big, list(lifted) + ker_n)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def lift_subgroup(f: AbelianFieldDesc, big: int) -> frozenset[int]:
    """Gal(Q(mu_big)/F) as a subgroup of (Z/big)^*."""
    n = f.conductor
    h = set(f.subgroup)
    return frozenset(u for u in units_mod(big) if u % n in h)


def is_subfield(inner: AbelianFieldDesc, outer: AbelianFieldDesc) -> bool:
    big = _lcm(inner.conductor, outer.conductor)
    return lift_subgroup(outer, big) <= lift_subgroup(inner, big)


def quadratic_subfield_of_prime_cyclotomic(p: int) -> int:
    """Squarefree d with Q(sqrt(d)) the unique quadratic subfield of Q(mu_p),
    computed from the Gaussian period over the squares, not from a formula."""
    if p == 2 or not is_prime(p):
        raise InvalidInputError(f"{p} is not an odd prime")
    squares = sorted({u * u % p for u in range(1, p)})
    eta = CyclotomicElement(p, [0])
    for h in squares:
        eta = eta + CyclotomicElement.zeta(p, h)
    mp = minimal_polynomial(eta)
    assert len(mp) == 3, "Gaussian period over the squares must be quadratic"
    c, b = mp[0], mp[1]
    disc = b * b - 4 * c
    assert disc.denominator == 1
    return squarefree_part(int(disc))


# --- local degrees and splitting ----------------------------------------------


def _primitive_root_mod_prime_power(p: int, k: int) -> int:
    g = next(
        u for u in range(2, p) if multiplicative_order(u, p) == p - 1
    )
    if k == 1:
        return g
    if multiplicative_order(g, p * p) != p * (p - 1):
        g += p
    return g


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    inv = pow(m1, -1, m2)
    return (r1 + (r2 - r1) * inv % m2 * m1) % (m1 * m2)


def _decomposition_group_gens(n: int, p: int) -> list[int]:
    """Generators of the decomposition group of p in Gal(Q(mu_n)/Q):
    the inertia block (Z/p^k)^* and a Frobenius lift congruent to p away
    from p."""
    k = 0
    m = n
    while m % p == 0:
        m //= p
        k += 1
    gens = []
    if k > 0:
        pk = p**k
        if p == 2:
            if k >= 2:
                gens.append(_crt(pk - 1, pk, 1, m) if m > 1 else pk - 1)
            if k >= 3:
                gens.append(_crt(5, pk, 1, m) if m > 1 else 5)
        else:
            g = _primitive_root_mod_prime_power(p, k)
            gens.append(_crt(g % pk, pk, 1, m) if m > 1 else g % pk)
    if m > 1:
        frob = _crt(1, p**k, p % m, m) if k > 0 else p % m
        gens.append(frob)
    return [g % n for g in gens]


def local_degree(f: AbelianFieldDesc, v: Place) -> int:
    """Common local degree [F_w : Q_v] over the places w of F above v."""
    n = f.conductor
    if n == 1:
        return 1
    h = frozenset(f.subgroup)
    if v.is_infinite:
        return 1 if (n - 1) in h else 2
    gens = _decomposition_group_gens(n, v.p)
    joined = subgroup_closure(n, list(h) + gens)
    return len(joined) // len(h)


def splits_quaternion(f: FieldDescriptor, q: QuaternionAlgebraQ) -> bool:
    """True iff F (abelian-representable) splits the division algebra (a,b):
    every ramified place of (a,b) must have even local degree in F."""
    desc = to_abelian(f)
    return all(local_degree(desc, v) % 2 == 0 for v in sorted(q.ramified))


COMMON_QUADRATIC_CAP_FACTOR = 8


def _common_quadratic_splitting_field(e: QuaternionAlgebraQ, d: QuaternionAlgebraQ):
    """A quadratic field Q(sqrt(m)) splitting both algebras; exists by CRT."""
    primes = {v.p for v in e.ramified | d.ramified if not v.is_infinite}
    prod = 1
    for p in primes:
        prod *= p
    cap = COMMON_QUADRATIC_CAP_FACTOR * prod * prod
    m = 1
    while m <= cap:
        m += 1
        for signed in (m, -m):
            if squarefree_part(signed) != signed:
                continue
            fd = QuadraticField(signed)
            if splits_quaternion(fd, e) and splits_quaternion(fd, d):
                return fd
    raise AssertionError("internal error: common quadratic splitting field search cap hit")


def contains_splitting_subfield(e: DivisionAlgebraDesc, d: QuaternionAlgebraQ):
    """Does E contain a splitting field of D?  Returns (answer, witness).

    For a field E the witness is the splitting subfield; for quaternionic E
    the witness is a quadratic field embedding in E and splitting D.
    """
    if isinstance(e, QuaternionAlgebraQ):
        return True, _common_quadratic_splitting_field(e, d)
    if isinstance(e, NonGaloisQuarticCM):
        candidates = [quadratic_descriptor(e.d0)]
    else:
        candidates = [s for s in subfields(to_abelian(e)) if s.degree > 1]
    for sub in sorted(candidates, key=lambda s: (s.degree, s.conductor, s.subgroup)):
        if splits_quaternion(AbelianField(sub), d):
            return True, sub
    return False, None
