import numpy as np
import pytest

from twistcheck import groups as G
from twistcheck import lattices as L
from twistcheck.errors import InvalidInputError, UnsupportedError
from twistcheck.numberfields import (
    AbelianField,
    AbelianFieldDesc,
    NonGaloisQuarticCM,
    QuadraticField,
    QuaternionAlgebraQ,
    RationalField,
)


def test_augmentation_examples():
    rep = L.augmentation_lattice(G.Cyclic(2))
    assert rep.rank == 1
    assert rep.matrix_of(1) == ((-1,),)

    rep = L.augmentation_lattice(G.Cyclic(3))
    m = np.array(rep.matrix_of(1))
    # characteristic polynomial t^2 + t + 1: trace -1, det 1
    assert m.trace() == -1 and round(np.linalg.det(m)) == 1

    rep = L.augmentation_lattice(G.Cyclic(5))
    assert L.character_of(rep) == (4, -1, -1, -1, -1)

    with pytest.raises(InvalidInputError):
        L.augmentation_lattice(G.Cyclic(1))


def test_augmentation_plus_trivial_is_regular(groups_up_to_12):
    for g in groups_up_to_12:
        if G.group_order(g) < 2:
            continue
        aug = L.character_of(L.augmentation_lattice(g))
        reg = L.character_of(L.regular_lattice(g))
        triv = L.character_of(L.trivial_lattice(g))
        assert tuple(a + t for a, t in zip(aug, triv)) == reg, str(g)


def test_named_lattice_examples():
    triv = L.named_lattice("trivial", group=G.Cyclic(4))
    assert triv.rank == 1 and all(m == ((1,),) for m in triv.matrices)

    rho3 = L.named_lattice("dihedral_rho", p=3)
    table = G.character_table(G.Dihedral(6))
    two_dim = next(c for c in table.characters if c.degree == 2)
    assert L.character_of(rho3) == tuple(int(v.rational_value()) for v in two_dim.values)

    q8 = L.named_lattice("q8_quaternion")
    tq = G.character_table(G.Quaternion8())
    std = next(c for c in tq.characters if c.degree == 2)
    assert L.character_of(q8) == tuple(2 * int(v.rational_value()) for v in std.values)

    sign = L.named_lattice("sign_dihedral", group=G.Dihedral(10))
    assert sign.rank == 1 and L.character_of(sign)[0] == 1

    with pytest.raises(InvalidInputError):
        L.named_lattice("nonsense", group=G.Cyclic(3))


def test_generator_relations_enforced():
    bad = [[[0, 1], [1, 1]]]  # infinite order, cannot represent C_3
    with pytest.raises(InvalidInputError):
        L.rep_from_generators(G.Cyclic(3), bad)
    good = [[[-1, -1], [1, 0]]]
    rep = L.rep_from_generators(G.Cyclic(3), good)
    assert rep.rank == 2
    assert L.character_of(rep) == L.character_of(L.augmentation_lattice(G.Cyclic(3)))


def test_decompose_over_examples():
    aug5 = L.augmentation_lattice(G.Cyclic(5))
    orbits, inter = L.decompose_over(aug5, RationalField())
    assert [(len(o), m) for o, m in orbits] == [(4, 1)]
    assert inter.degree == 1

    orbits, inter = L.decompose_over(aug5, QuadraticField(5))
    assert [(len(o), m) for o, m in orbits] == [(2, 1), (2, 1)]
    assert inter.degree == 2

    orbits, _ = L.decompose_over(aug5, QuadraticField(2))
    assert [(len(o), m) for o, m in orbits] == [(4, 1)]


def test_is_simple_over_examples():
    for p in (3, 5, 7, 11, 13):
        aug = L.augmentation_lattice(G.Cyclic(p))
        simple, cert = L.is_simple_over(aug, RationalField())
        assert simple, p

    q8 = L.q8_quaternion_lattice()
    simple, cert = L.is_simple_over(q8, RationalField())
    assert simple
    assert cert["orbits"][0]["multiplicity"] == 2
    assert cert["schur"]["index_over_D"] == 2

    simple, cert = L.is_simple_over(q8, QuadraticField(-3))
    assert not simple
    assert cert["schur"]["index_over_D"] == 1  # 3 = 1+1+1, the field splits Hamilton

    simple, _ = L.is_simple_over(q8, QuadraticField(-7))
    assert simple


def test_is_simple_over_quartic_cm_against_q8_unsupported():
    q8 = L.q8_quaternion_lattice()
    with pytest.raises(UnsupportedError):
        L.is_simple_over(q8, NonGaloisQuarticCM(5))


def test_endo_algebra_examples():
    aug = L.augmentation_lattice(G.Cyclic(7))
    shape = L.endo_algebra_over_Q(aug)
    assert shape.components == ((1, AbelianField(AbelianFieldDesc.full_cyclotomic(7))),)
    assert shape.dimension == 6

    rho = L.dihedral_rho_lattice(7)
    shape = L.endo_algebra_over_Q(rho)
    assert shape.components == ((1, AbelianField(AbelianFieldDesc.make(7, [6]))),)
    assert shape.dimension == 3

    q8 = L.q8_quaternion_lattice()
    shape = L.endo_algebra_over_Q(q8)
    assert shape.components == ((1, QuaternionAlgebraQ(-1, -1)),)
    assert shape.dimension == 4

    reg = L.regular_lattice(G.Cyclic(6))
    shape = L.endo_algebra_over_Q(reg)
    assert shape.dimension == 6
    assert len(shape.components) == 4


def test_endo_shape_dimension_against_oracle(groups_up_to_12):
    from twistcheck.oracle import centralizer_basis

    for g in groups_up_to_12:
        if G.group_order(g) < 2:
            continue
        for rep in (L.regular_lattice(g), L.augmentation_lattice(g)):
            shape = L.endo_algebra_over_Q(rep)
            basis = centralizer_basis(rep.generator_matrices())
            assert shape.dimension == len(basis), (str(g), rep.name)


def test_lattice_for_rational_irreducible_characters(groups_up_to_12):
    for g in groups_up_to_12:
        table = G.character_table(g)
        for ri in G.rational_irreducibles(g):
            rep = L.lattice_for_rational_irreducible(g, ri)
            assert rep.rank == ri.q_dimension
            chi = L.character_of(rep)
            expected = []
            for k in range(len(table.class_representatives)):
                total = sum(
                    (table.characters[i].values[k] for i in ri.orbit),
                    __import__("twistcheck.cyclotomic", fromlist=["CyclotomicElement"])
                    .CyclotomicElement.from_rational(0),
                )
                expected.append(int(total.rational_value()) * ri.schur_index)
            assert list(chi) == expected, (str(g), ri.label)


def test_is_simple_over_agrees_with_oracle_small():
    from twistcheck.oracle import end_of_twist_oracle

    cases = []
    for p in (3, 5, 7):
        cases.append((L.augmentation_lattice(G.Cyclic(p)), RationalField()))
        cases.append((L.augmentation_lattice(G.Cyclic(p)), QuadraticField(2)))
        cases.append(
            (L.augmentation_lattice(G.Cyclic(p)), QuadraticField(quadsub(p)))
        )
    cases.append((L.q8_quaternion_lattice(), QuadraticField(-1)))
    cases.append((L.q8_quaternion_lattice(), RationalField()))
    cases.append((L.dihedral_rho_lattice(5), QuadraticField(-1)))
    for rep, d in cases:
        simple, _ = L.is_simple_over(rep, d)
        report = end_of_twist_oracle(rep, d)
        if report.verdict.outcome == "inconclusive":
            continue
        assert simple == report.verdict.is_division, (rep.name, d)


def quadsub(p):
    from twistcheck.numberfields import quadratic_subfield_of_prime_cyclotomic

    return quadratic_subfield_of_prime_cyclotomic(p)
