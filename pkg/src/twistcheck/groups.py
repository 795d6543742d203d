"""Catalog groups with exact character tables.

Supported groups: cyclic, dihedral of order 2m with m odd, the quaternion
group Q8, and finite abelian products.  Character values are exact
cyclotomic numbers with conductor dividing the group exponent.  Schur
indices over Q come from a fixed catalog: 1 everywhere except the
two-dimensional character of Q8, whose index is 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .arith import divisors, euler_phi
from .cyclotomic import CyclotomicElement, galois_apply
from .errors import InvalidInputError, UnsupportedError
from .numberfields import (
    AbelianField,
    AbelianFieldDesc,
    DivisionAlgebraDesc,
    QuaternionAlgebraQ,
    RationalField,
    algebra_dimension,
)


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("cyclic group order must be >= 1")

    def __str__(self):
        return f"C{self.n}"


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order 2m, m odd >= 3."""

    order: int

    def __post_init__(self):
        if self.order % 2 or self.order < 6 or (self.order // 2) % 2 == 0:
            raise InvalidInputError("dihedral catalog covers order 2m with m odd >= 3")

    @property
    def m(self) -> int:
        return self.order // 2

    def __str__(self):
        return f"D{self.order}"


@dataclass(frozen=True)
class Quaternion8:
    def __str__(self):
        return "Q8"


@dataclass(frozen=True)
class AbelianProduct:
    invariants: tuple[int, ...]

    def __post_init__(self):
        if not self.invariants or any(n < 1 for n in self.invariants):
            raise InvalidInputError("invariants must be positive integers")

    def __str__(self):
        return "x".join(f"C{n}" for n in self.invariants)


GroupSpec = Cyclic | Dihedral | Quaternion8 | AbelianProduct

_Q8_AXES = "eijk"
_Q8_MUL = {
    ("e", "e"): (1, "e"), ("e", "i"): (1, "i"), ("e", "j"): (1, "j"), ("e", "k"): (1, "k"),
    ("i", "e"): (1, "i"), ("i", "i"): (-1, "e"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "e"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "e"), ("j", "k"): (1, "i"),
    ("k", "e"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "e"),
}


def group_order(g: GroupSpec) -> int:
    if isinstance(g, Cyclic):
        return g.n
    if isinstance(g, Dihedral):
        return g.order
    if isinstance(g, Quaternion8):
        return 8
    if isinstance(g, AbelianProduct):
        out = 1
        for n in g.invariants:
            out *= n
        return out
    raise UnsupportedError(f"unknown group spec {g!r}")


def group_exponent(g: GroupSpec) -> int:
    if isinstance(g, Cyclic):
        return g.n
    if isinstance(g, Dihedral):
        return 2 * g.m
    if isinstance(g, Quaternion8):
        return 4
    if isinstance(g, AbelianProduct):
        return lcm(*g.invariants) if len(g.invariants) > 1 else g.invariants[0]
    raise UnsupportedError(f"unknown group spec {g!r}")


def elements(g: GroupSpec) -> list:
    if isinstance(g, Cyclic):
        return list(range(g.n))
    if isinstance(g, Dihedral):
        return [(i, e) for e in (0, 1) for i in range(g.m)]
    if isinstance(g, Quaternion8):
        return [(s, a) for a in _Q8_AXES for s in (1, -1)]
    if isinstance(g, AbelianProduct):
        out = [()]
        for n in g.invariants:
            out = [t + (i,) for t in out for i in range(n)]
        return out
    raise UnsupportedError(f"unknown group spec {g!r}")


def identity(g: GroupSpec):
    if isinstance(g, Cyclic):
        return 0
    if isinstance(g, Dihedral):
        return (0, 0)
    if isinstance(g, Quaternion8):
        return (1, "e")
    if isinstance(g, AbelianProduct):
        return tuple(0 for _ in g.invariants)
    raise UnsupportedError(f"unknown group spec {g!r}")


def multiply(g: GroupSpec, a, b):
    if isinstance(g, Cyclic):
        return (a + b) % g.n
    if isinstance(g, Dihedral):
        i, e = a
        j, f = b
        return ((i + (j if e == 0 else -j)) % g.m, (e + f) % 2)
    if isinstance(g, Quaternion8):
        s, ax = _Q8_MUL[(a[1], b[1])]
        return (a[0] * b[0] * s, ax)
    if isinstance(g, AbelianProduct):
        return tuple((x + y) % n for x, y, n in zip(a, b, g.invariants))
    raise UnsupportedError(f"unknown group spec {g!r}")


def inverse(g: GroupSpec, a):
    if isinstance(g, Cyclic):
        return (-a) % g.n
    if isinstance(g, Dihedral):
        i, e = a
        return ((-i) % g.m, 0) if e == 0 else a
    if isinstance(g, Quaternion8):
        if a[1] == "e":
            return a
        return (-a[0], a[1])
    if isinstance(g, AbelianProduct):
        return tuple((-x) % n for x, n in zip(a, g.invariants))
    raise UnsupportedError(f"unknown group spec {g!r}")


def generators(g: GroupSpec) -> list:
    """Canonical generating set; also the generator convention for explicit
    matrix input."""
    if isinstance(g, Cyclic):
        return [1 % g.n] if g.n > 1 else []
    if isinstance(g, Dihedral):
        return [(1, 0), (0, 1)]
    if isinstance(g, Quaternion8):
        return [(1, "i"), (1, "j")]
    if isinstance(g, AbelianProduct):
        gens = []
        for i, n in enumerate(g.invariants):
            if n > 1:
                gens.append(tuple(int(i == j) for j in range(len(g.invariants))))
        return gens
    raise UnsupportedError(f"unknown group spec {g!r}")


def element_repr(g: GroupSpec, a) -> str:
    if isinstance(g, Cyclic):
        return f"g^{a}" if a else "1"
    if isinstance(g, Dihedral):
        i, e = a
        word = (f"r^{i}" if i else "") + ("s" if e else "")
        return word or "1"
    if isinstance(g, Quaternion8):
        s, ax = a
        core = "1" if ax == "e" else ax
        return core if s == 1 else f"-{core}"
    if isinstance(g, AbelianProduct):
        return "(" + ",".join(map(str, a)) + ")"
    raise UnsupportedError(f"unknown group spec {g!r}")


def _element_sort_key(g: GroupSpec, a):
    if isinstance(g, Quaternion8):
        return (_Q8_AXES.index(a[1]), 0 if a[0] == 1 else 1)
    return a


def conjugacy_classes(g: GroupSpec) -> list[tuple]:
    """List of (representative, members) with the identity class first,
    classes ordered by (size, representative key)."""
    els = elements(g)
    seen = set()
    classes = []
    for x in sorted(els, key=lambda a: _element_sort_key(g, a)):
        if x in seen:
            continue
        orbit = sorted(
            {multiply(g, multiply(g, t, x), inverse(g, t)) for t in els},
            key=lambda a: _element_sort_key(g, a),
        )
        seen.update(orbit)
        classes.append((orbit[0], tuple(orbit)))
    ident = identity(g)
    classes.sort(key=lambda c: (c[0] != ident, len(c[1]), _element_sort_key(g, c[0])))
    return classes


@dataclass(frozen=True)
class Character:
    """An irreducible complex character, as exact values per conjugacy class."""

    name: str
    values: tuple
    data: tuple

    @property
    def degree(self) -> int:
        return int(self.values[0].rational_value())


@dataclass(frozen=True)
class CharacterTable:
    group: GroupSpec
    class_representatives: tuple
    class_members: tuple
    characters: tuple

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.class_members)

    def class_index_of(self, element) -> int:
        index = getattr(self, "_element_index", None)
        if index is None:
            index = {x: i for i, members in enumerate(self.class_members) for x in members}
            object.__setattr__(self, "_element_index", index)
        try:
            return index[element]
        except KeyError:
            raise InvalidInputError(f"{element!r} is not a group element") from None


def _abelian_character_table(g: GroupSpec, invariants: tuple[int, ...]) -> CharacterTable:
    e = group_exponent(g)
    els = elements(g)
    classes = [(x, (x,)) for x in els]
    duals = [()]
    for n in invariants:
        duals = [t + (j,) for t in duals for j in range(n)]
    characters = []
    for dual in sorted(duals):
        values = []
        for x, _ in classes:
            xt = x if isinstance(x, tuple) else (x,)
            k = sum(j * a * (e // n) for j, a, n in zip(dual, xt, invariants)) % e
            values.append(CyclotomicElement.zeta(e, k))
        name = "chi_" + "_".join(map(str, dual))
        characters.append(Character(name, tuple(values), ("abelian", dual, invariants)))
    return CharacterTable(g, tuple(x for x, _ in classes), tuple(m for _, m in classes), tuple(characters))


@lru_cache(maxsize=None)
def character_table(g: GroupSpec) -> CharacterTable:
    """Exact character table of a catalog group."""
    if isinstance(g, Cyclic):
        return _abelian_character_table(g, (g.n,))
    if isinstance(g, AbelianProduct):
        return _abelian_character_table(g, g.invariants)
    classes = conjugacy_classes(g)
    reps = tuple(c[0] for c in classes)
    members = tuple(c[1] for c in classes)
    one = CyclotomicElement.from_rational(1)

    def const(x):
        return CyclotomicElement.from_rational(x)

    if isinstance(g, Dihedral):
        m = g.m
        characters = [
            Character("triv", tuple(const(1) for _ in reps), ("trivial",)),
            Character(
                "sign",
                tuple(const(-1) if rep[1] else const(1) for rep in reps),
                ("dihedral_sign",),
            ),
        ]
        for j in range(1, (m - 1) // 2 + 1):
            values = []
            for rep in reps:
                if rep[1]:
                    values.append(const(0))
                else:
                    i = rep[0]
                    values.append(
                        CyclotomicElement.zeta(m, j * i) + CyclotomicElement.zeta(m, -j * i)
                    )
            characters.append(Character(f"rho_{j}", tuple(values), ("dihedral2", j)))
        return CharacterTable(g, reps, members, tuple(characters))

    if isinstance(g, Quaternion8):
        characters = [Character("triv", tuple(const(1) for _ in reps), ("trivial",))]
        for name, si, sj in (("chi_i", 1, -1), ("chi_j", -1, 1), ("chi_k", -1, -1)):
            values = []
            for rep in reps:
                ax = rep[1]
                v = {"e": 1, "i": si, "j": sj, "k": si * sj}[ax]
                values.append(const(v))
            characters.append(Character(name, tuple(values), ("q8_sign", si, sj)))
        values = []
        for rep in reps:
            if rep[1] == "e":
                values.append(const(2 * rep[0]))
            else:
                values.append(const(0))
        characters.append(Character("std", tuple(values), ("q8_std",)))
        return CharacterTable(g, reps, members, tuple(characters))

    raise UnsupportedError(f"no character table for {g!r}")


def frobenius_schur(table: CharacterTable, chi: Character) -> int:
    """(1/|G|) * sum over g of chi(g^2), exactly."""
    g = table.group
    total = CyclotomicElement.from_rational(0)
    for x in elements(g):
        sq = multiply(g, x, x)
        total = total + chi.values[table.class_index_of(sq)]
    value = total.rational_value() / group_order(g)
    if value not in (-1, 0, 1):
        raise AssertionError(f"indicator of {chi.name} is {value}")
    return int(value)


_ORBIT_CACHE: dict = {}


def galois_orbits(table: CharacterTable, subgroup_gens) -> list[tuple[int, ...]]:
    """Partition of the characters under t.chi = sigma_t(chi), t in the
    subgroup of (Z/e)^* generated by subgroup_gens."""
    e = group_exponent(table.group)
    for t in subgroup_gens:
        if gcd(t, e) != 1:
            raise InvalidInputError(f"{t} is not a unit modulo {e}")
    from .numberfields import subgroup_closure

    h = subgroup_closure(e, list(subgroup_gens))
    cache_key = (id(table), tuple(sorted(h)))
    cached = _ORBIT_CACHE.get(cache_key)
    if cached is not None:
        return cached[1]
    chars = table.characters
    lifted = [[v.lift(e) for v in chi.values] for chi in chars]
    index_by_key = {
        tuple(v.coeffs for v in values): i for i, values in enumerate(lifted)
    }
    orbits = []
    assigned = set()
    for i in range(len(chars)):
        if i in assigned:
            continue
        orbit = set()
        for t in sorted(h):
            image = tuple(galois_apply(t, v).coeffs for v in lifted[i])
            orbit.add(index_by_key[image])
        orbits.append(tuple(sorted(orbit)))
        assigned.update(orbit)
    result = sorted(orbits)
    # table is kept alive by the value so its id cannot be recycled
    _ORBIT_CACHE[cache_key] = (table, result)
    return result


@dataclass(frozen=True)
class RationalIrreducible:
    """A Galois orbit of complex characters, bundled as one rational
    irreducible with its Schur index and endomorphism algebra."""

    label: str
    orbit: tuple[int, ...]
    degree: int
    schur_index: int
    endo: DivisionAlgebraDesc
    data: tuple

    @property
    def q_dimension(self) -> int:
        return len(self.orbit) * self.degree * self.schur_index

    @property
    def multiplicity_in_regular(self) -> int:
        return self.degree // self.schur_index


def _character_order(chi: Character, invariants: tuple[int, ...]) -> int:
    dual = chi.data[1]
    out = 1
    for j, n in zip(dual, invariants):
        out = lcm(out, n // gcd(n, j))
    return out


def _cyclotomic_endo(d: int) -> DivisionAlgebraDesc:
    desc = AbelianFieldDesc.full_cyclotomic(d)
    return RationalField() if desc.degree == 1 else AbelianField(desc)


def _real_cyclotomic_endo(d: int) -> DivisionAlgebraDesc:
    desc = AbelianFieldDesc.make(d, [d - 1])
    return RationalField() if desc.degree == 1 else AbelianField(desc)


@lru_cache(maxsize=None)
def rational_irreducibles(g: GroupSpec) -> tuple[RationalIrreducible, ...]:
    """Rational irreducible representations: full Galois orbits with catalog
    Schur indices and endomorphism algebras."""
    table = character_table(g)
    e = group_exponent(g)
    from .numberfields import units_mod

    orbits = galois_orbits(table, units_mod(e) if e > 1 else [])
    out = []
    for orbit in orbits:
        chars = [table.characters[i] for i in orbit]
        chi = chars[0]
        kind = chi.data[0]
        degree = chi.degree
        if kind == "abelian":
            d = max(_character_order(c, chi.data[2]) for c in chars)
            if d == 1:
                label = "trivial"
            elif isinstance(g, Cyclic):
                label = f"cyclotomic_twist({d})"
            else:
                label = "character_twist(" + ",".join(map(str, chi.data[1])) + ")"
            out.append(
                RationalIrreducible(
                    label, orbit, 1, 1, _cyclotomic_endo(d), ("abelian_orbit", d, chi.data[1], chi.data[2])
                )
            )
        elif kind == "trivial":
            out.append(RationalIrreducible("trivial", orbit, 1, 1, RationalField(), ("trivial",)))
        elif kind == "dihedral_sign":
            out.append(RationalIrreducible("sign", orbit, 1, 1, RationalField(), ("dihedral_sign",)))
        elif kind == "dihedral2":
            m = g.m
            d = m // gcd(chi.data[1], m)
            out.append(
                RationalIrreducible(
                    f"dihedral_rho({d})", orbit, 2, 1, _real_cyclotomic_endo(d), ("dihedral2_orbit", d)
                )
            )
        elif kind == "q8_sign":
            out.append(
                RationalIrreducible(
                    f"q8_sign({chi.name[-1]})", orbit, 1, 1, RationalField(), chi.data
                )
            )
        elif kind == "q8_std":
            out.append(
                RationalIrreducible(
                    "q8_standard", orbit, 2, 2, QuaternionAlgebraQ(-1, -1), ("q8_std",)
                )
            )
        else:
            raise UnsupportedError(f"character kind {kind!r} outside the catalog")
    total = sum(r.multiplicity_in_regular * r.q_dimension for r in out)
    assert total == group_order(g)
    for r in out:
        assert algebra_dimension(r.endo) == len(r.orbit) * r.schur_index**2
    return tuple(out)
