"""Integral representations (lattices) of catalog groups.

An IntegralRep stores one integer matrix per group element, in the order of
groups.elements().  Simplicity of the twist over a field D is decided from
the character alone: complex constituents are regrouped into orbits under
the Galois group fixing D intersected with the cyclotomic field of the
exponent, and multiplicities are compared with catalog Schur indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import groups as G
from .arith import euler_phi
from .cyclotomic import cyclotomic_polynomial
from .errors import InvalidInputError, UnsupportedError
from .numberfields import (
    AbelianField,
    DivisionAlgebraDesc,
    FieldDescriptor,
    NonGaloisQuarticCM,
    QuaternionAlgebraQ,
    RationalField,
    algebra_dimension,
    intersect_with_cyclotomic,
    lift_subgroup,
    splits_quaternion,
)
from ._kernels.exact import det_int

Matrix = tuple[tuple[int, ...], ...]


def _np(m: Matrix) -> np.ndarray:
    return np.array(m, dtype=np.int64)


def _tup(a: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in a)


@dataclass(frozen=True)
class IntegralRep:
    """A lattice with G-action: one matrix in GL_n(Z) per group element."""

    group: G.GroupSpec
    rank: int
    matrices: tuple[Matrix, ...]
    name: str | None = None

    def matrix_of(self, element) -> Matrix:
        return self.matrices[_element_index(self.group)[element]]

    def generator_matrices(self) -> list[Matrix]:
        return [self.matrix_of(g) for g in G.generators(self.group)]

    def __post_init__(self):
        els = G.elements(self.group)
        if len(self.matrices) != len(els):
            raise InvalidInputError("need one matrix per group element")
        for m in self.matrices:
            if len(m) != self.rank or any(len(row) != self.rank for row in m):
                raise InvalidInputError("matrix size does not match rank")
        idx = _element_index(self.group)
        arrs = [_np(m) for m in self.matrices]
        ident = idx[G.identity(self.group)]
        if not np.array_equal(arrs[ident], np.eye(self.rank, dtype=np.int64)):
            raise InvalidInputError("identity element must act as the identity matrix")
        for gen in G.generators(self.group):
            gi = idx[gen]
            if det_int(self.matrices[gi]) not in (1, -1):
                raise InvalidInputError("generator matrix is not in GL_n(Z)")
            for h, hm in zip(els, arrs):
                prod = arrs[gi] @ hm
                target = idx[G.multiply(self.group, gen, h)]
                if not np.array_equal(prod, arrs[target]):
                    raise InvalidInputError("matrices do not satisfy the group relations")


@lru_cache(maxsize=None)
def _element_index(group: G.GroupSpec) -> dict:
    return {x: i for i, x in enumerate(G.elements(group))}


def rep_from_generators(group: G.GroupSpec, gen_matrices, name=None) -> IntegralRep:
    """Build the per-element action from images of the canonical generators."""
    gens = G.generators(group)
    if len(gen_matrices) != len(gens):
        raise InvalidInputError(f"{group} needs {len(gens)} generator matrices")
    gen_matrices = [_tup(_np(m)) for m in gen_matrices]
    rank = len(gen_matrices[0]) if gen_matrices else 1
    idx = _element_index(group)
    known: dict = {G.identity(group): np.eye(rank, dtype=np.int64)}
    frontier = [G.identity(group)]
    while frontier:
        x = frontier.pop()
        for g, gm in zip(gens, gen_matrices):
            y = G.multiply(group, g, x)
            if y not in known:
                known[y] = _np(gm) @ known[x]
                frontier.append(y)
    if len(known) != len(idx):
        raise InvalidInputError("generator images do not generate the group action")
    matrices = tuple(_tup(known[x]) for x in G.elements(group))
    return IntegralRep(group, rank, matrices, name)


# --- named constructors -------------------------------------------------------


def augmentation_lattice(group: G.GroupSpec) -> IntegralRep:
    """Kernel of the coefficient-sum map Z[G] -> Z, with the left regular
    action on the basis {g - 1 : g != 1}."""
    els = G.elements(group)
    if len(els) < 2:
        raise InvalidInputError("augmentation lattice needs |G| >= 2")
    ident = G.identity(group)
    basis = [x for x in els if x != ident]
    pos = {x: i for i, x in enumerate(basis)}
    n = len(basis)
    mats = []
    for g in els:
        m = np.zeros((n, n), dtype=np.int64)
        for j, h in enumerate(basis):
            gh = G.multiply(group, g, h)
            if gh != ident:
                m[pos[gh], j] += 1
            if g != ident:
                m[pos[g], j] -= 1
        mats.append(_tup(m))
    return IntegralRep(group, n, tuple(mats), "augmentation")


def regular_lattice(group: G.GroupSpec) -> IntegralRep:
    els = G.elements(group)
    idx = _element_index(group)
    n = len(els)
    mats = []
    for g in els:
        m = np.zeros((n, n), dtype=np.int64)
        for j, h in enumerate(els):
            m[idx[G.multiply(group, g, h)], j] = 1
        mats.append(_tup(m))
    return IntegralRep(group, n, tuple(mats), "regular")


def trivial_lattice(group: G.GroupSpec) -> IntegralRep:
    mats = tuple((((1,),) for _ in G.elements(group)))
    return IntegralRep(group, 1, mats, "trivial")


def _cyclotomic_action_matrices(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Multiplication by zeta_d and the inversion zeta -> zeta^-1 on Z[zeta_d]."""
    phi = list(cyclotomic_polynomial(d))
    deg = len(phi) - 1
    comp = np.zeros((deg, deg), dtype=np.int64)
    for i in range(deg - 1):
        comp[i + 1, i] = 1
    for i in range(deg):
        comp[i, deg - 1] = -phi[i]
    inv = np.zeros((deg, deg), dtype=np.int64)
    for k in range(deg):
        col = [0] * d
        col[(d - k) % d] = 1
        red = _reduce_int_poly(col, phi)
        for i in range(deg):
            inv[i, k] = red[i]
    return comp, inv


def _reduce_int_poly(coeffs: list[int], phi: list[int]) -> list[int]:
    c = list(coeffs)
    deg = len(phi) - 1
    for k in range(len(c) - 1, deg - 1, -1):
        f = c[k]
        if f:
            for i, a in enumerate(phi):
                c[k - deg + i] -= f * a
    c = c[:deg]
    return c + [0] * (deg - len(c))


def dihedral_rho_lattice(m: int) -> IntegralRep:
    """Rank phi(m) lattice for D_2m: rotation acts by multiplication by
    zeta_m on Z[zeta_m], reflection by inversion."""
    if m < 3 or m % 2 == 0:
        raise InvalidInputError("dihedral_rho needs odd m >= 3")
    group = G.Dihedral(2 * m)
    comp, inv = _cyclotomic_action_matrices(m)
    mats = []
    for (i, e) in G.elements(group):
        a = np.linalg.matrix_power(comp, i) if i else np.eye(comp.shape[0], dtype=np.int64)
        a = a.astype(np.int64)
        if e:
            a = a @ inv
        mats.append(_tup(a))
    return IntegralRep(group, comp.shape[0], tuple(mats), f"dihedral_rho({m})")


def sign_dihedral_lattice(group: G.Dihedral) -> IntegralRep:
    mats = tuple((((-1 if e else 1,),) for (_, e) in G.elements(group)))
    return IntegralRep(group, 1, mats, "sign_dihedral")


def q8_quaternion_lattice() -> IntegralRep:
    """Z<1,i,j,k> with Q8 acting by left multiplication."""
    group = G.Quaternion8()
    axes = "eijk"
    mats = []
    for g in G.elements(group):
        m = np.zeros((4, 4), dtype=np.int64)
        for j, ax in enumerate(axes):
            s, res = G.multiply(group, g, (1, ax))
            m[axes.index(res), j] = s
        mats.append(_tup(m))
    return IntegralRep(group, 4, tuple(mats), "q8_quaternion")


def named_lattice(name: str, group: G.GroupSpec | None = None, p: int | None = None) -> IntegralRep:
    if name == "regular":
        if group is None:
            raise InvalidInputError("regular lattice needs a group")
        return regular_lattice(group)
    if name == "trivial":
        if group is None:
            raise InvalidInputError("trivial lattice needs a group")
        return trivial_lattice(group)
    if name == "augmentation":
        if group is None:
            raise InvalidInputError("augmentation lattice needs a group")
        return augmentation_lattice(group)
    if name == "sign_dihedral":
        if not isinstance(group, G.Dihedral):
            raise InvalidInputError("sign_dihedral needs a dihedral group")
        return sign_dihedral_lattice(group)
    if name == "dihedral_rho":
        if p is None and isinstance(group, G.Dihedral):
            p = group.m
        if p is None:
            raise InvalidInputError("dihedral_rho needs the parameter p")
        return dihedral_rho_lattice(p)
    if name == "q8_quaternion":
        return q8_quaternion_lattice()
    raise InvalidInputError(f"unknown lattice name {name!r}")


def lattice_for_rational_irreducible(group: G.GroupSpec, ri: G.RationalIrreducible) -> IntegralRep:
    """An integral lattice realizing the given rational irreducible."""
    kind = ri.data[0]
    if kind == "trivial":
        return trivial_lattice(group)
    if kind == "dihedral_sign":
        return sign_dihedral_lattice(group)
    if kind == "q8_sign":
        _, si, sj = ri.data
        vals = {"e": 1, "i": si, "j": sj, "k": si * sj}
        mats = tuple((((vals[ax],),) for (_, ax) in G.elements(group)))
        return IntegralRep(group, 1, mats, ri.label)
    if kind == "q8_std":
        return q8_quaternion_lattice()
    if kind == "dihedral2_orbit":
        d = ri.data[1]
        comp, inv = _cyclotomic_action_matrices(d)
        deg = comp.shape[0]
        mats = []
        for (i, e) in G.elements(group):
            a = np.linalg.matrix_power(comp, i % d).astype(np.int64) if i % d else np.eye(deg, dtype=np.int64)
            if e:
                a = a @ inv
            mats.append(_tup(a))
        return IntegralRep(group, deg, tuple(mats), ri.label)
    if kind == "abelian_orbit":
        _, d, dual, invariants = ri.data
        if d == 1:
            return trivial_lattice(group)
        comp, _ = _cyclotomic_action_matrices(d)
        deg = comp.shape[0]
        mats = []
        for x in G.elements(group):
            xt = x if isinstance(x, tuple) else (x,)
            k = sum(a * (d * j // n) for j, a, n in zip(dual, xt, invariants)) % d
            a = np.linalg.matrix_power(comp, k).astype(np.int64) if k else np.eye(deg, dtype=np.int64)
            mats.append(_tup(a))
        return IntegralRep(group, deg, tuple(mats), ri.label)
    raise UnsupportedError(f"no lattice constructor for {ri.label}")


# --- characters and decomposition ----------------------------------------------


@lru_cache(maxsize=None)
def character_of(rep: IntegralRep) -> tuple[int, ...]:
    """Character of the lattice as integer traces, one per conjugacy class."""
    table = G.character_table(rep.group)
    idx = _element_index(rep.group)
    out = []
    for members in table.class_members:
        traces = {sum(rep.matrices[idx[x]][i][i] for i in range(rep.rank)) for x in members}
        if len(traces) != 1:
            raise InvalidInputError("trace is not a class function; not a representation")
        out.append(traces.pop())
    assert out[0] == rep.rank
    return tuple(out)


@lru_cache(maxsize=None)
def complex_multiplicities(rep: IntegralRep) -> tuple[int, ...]:
    """Multiplicity of each complex irreducible character in the lattice."""
    table = G.character_table(rep.group)
    chi = character_of(rep)
    order = G.group_order(rep.group)
    inv_class = [
        table.class_index_of(G.inverse(rep.group, r)) for r in table.class_representatives
    ]
    sizes = table.class_sizes
    out = []
    for c in table.characters:
        total = None
        for i in range(len(sizes)):
            term = sizes[i] * chi[i] * c.values[inv_class[i]]
            total = term if total is None else total + term
        m = total.rational_value() / order
        if m.denominator != 1 or m < 0:
            raise AssertionError("inner product is not a nonnegative integer")
        out.append(int(m))
    return tuple(out)


def _galois_subgroup_fixing(d_descriptor, e: int) -> list[int]:
    """Generators (the full member list) of Gal(Q(mu_e)/ D cap Q(mu_e))."""
    inter = intersect_with_cyclotomic(d_descriptor, e)
    assert e % inter.conductor == 0
    return sorted(lift_subgroup(inter, e)), inter


def decompose_over(rep: IntegralRep, d: FieldDescriptor):
    """Constituents of the character grouped into orbits over D.

    Returns (orbit list, intersection descriptor): each orbit entry is
    (character indices tuple, common multiplicity), only for orbits that
    occur in the lattice.
    """
    table = G.character_table(rep.group)
    e = G.group_exponent(rep.group)
    mults = complex_multiplicities(rep)
    subgroup, inter = _galois_subgroup_fixing(d, e)
    orbits = G.galois_orbits(table, subgroup if e > 1 else [])
    out = []
    for orbit in orbits:
        occurring = [mults[i] for i in orbit]
        if all(m == 0 for m in occurring):
            continue
        if len(set(occurring)) != 1:
            raise AssertionError("multiplicity is not constant on a Galois orbit")
        out.append((orbit, occurring[0]))
    return out, inter


def _orbit_schur_index_over(table, orbit, d: FieldDescriptor) -> tuple[int, dict]:
    """Catalog Schur index of the orbit over the field D, with justification."""
    kinds = {table.characters[i].data[0] for i in orbit}
    if kinds == {"q8_std"}:
        ham = QuaternionAlgebraQ(-1, -1)
        if isinstance(d, NonGaloisQuarticCM):
            raise UnsupportedError(
                "cannot decide whether a non-Galois quartic CM field splits (-1,-1) from d0 alone"
            )
        split = splits_quaternion(d, ham)
        return (1 if split else 2), {
            "catalog_index_over_Q": 2,
            "splits_hamilton": split,
        }
    return 1, {"catalog_index_over_Q": 1}


def is_simple_over(rep: IntegralRep, d: FieldDescriptor) -> tuple[bool, dict]:
    """Is the twist by this lattice simple when End(A) tensor Q equals the
    field D?  True iff the character is a single Galois orbit over D with
    multiplicity equal to the orbit's Schur index over D."""
    table = G.character_table(rep.group)
    orbits, inter = decompose_over(rep, d)
    cert: dict = {
        "exponent": G.group_exponent(rep.group),
        "intersection": inter.describe(),
        "orbits": [
            {
                "characters": [table.characters[i].name for i in orbit],
                "multiplicity": m,
            }
            for orbit, m in orbits
        ],
    }
    if len(orbits) != 1:
        cert["reason"] = "constituents split into several orbits over D"
        orbits_q, _ = decompose_over(rep, RationalField())
        cert["reducible_over_Q"] = len(orbits_q) != 1
        return False, cert
    orbit, mult = orbits[0]
    index, justification = _orbit_schur_index_over(table, orbit, d)
    cert["schur"] = {"index_over_D": index, **justification}
    if mult != index:
        cert["reason"] = f"multiplicity {mult} differs from Schur index {index}"
        orbits_q, _ = decompose_over(rep, RationalField())
        cert["reducible_over_Q"] = not (
            len(orbits_q) == 1 and orbits_q[0][1] == _orbit_schur_index_over(table, orbits_q[0][0], RationalField())[0]
        )
        return False, cert
    return True, cert


@dataclass(frozen=True)
class EndoAlgebraShape:
    """Matrix components of End_{Q[G]}(lattice tensor Q): a list of
    (multiplicity m, division algebra) meaning M_m over that algebra."""

    components: tuple[tuple[int, DivisionAlgebraDesc], ...]

    @property
    def dimension(self) -> int:
        return sum(m * m * algebra_dimension(delta) for m, delta in self.components)

    def describe(self) -> dict:
        return {
            "components": [
                {"matrix_size": m, "division_algebra": delta.describe()}
                for m, delta in self.components
            ],
            "dimension": self.dimension,
        }


def endo_algebra_over_Q(rep: IntegralRep) -> EndoAlgebraShape:
    """Shape of the endomorphism algebra of the rational representation."""
    mults = complex_multiplicities(rep)
    comps = []
    for ri in G.rational_irreducibles(rep.group):
        m = mults[ri.orbit[0]]
        if m == 0:
            continue
        if m % ri.schur_index:
            raise AssertionError("multiplicity incompatible with catalog Schur index")
        comps.append((m // ri.schur_index, ri.endo))
    return EndoAlgebraShape(tuple(comps))
