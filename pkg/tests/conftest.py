import pytest

from twistcheck import groups as G


def catalog_groups(max_order: int):
    """Every catalog group of order <= max_order (abelian products up to a
    representative spread)."""
    out = [G.Cyclic(n) for n in range(1, max_order + 1)]
    out += [G.Dihedral(2 * m) for m in range(3, max_order // 2 + 1, 2)]
    if max_order >= 8:
        out.append(G.Quaternion8())
    products = [
        (2, 2), (2, 4), (3, 3), (2, 2, 2), (2, 6), (4, 4), (2, 8),
        (2, 2, 4), (3, 6), (2, 10), (2, 12), (2, 2, 6),
    ]
    for invs in products:
        order = 1
        for n in invs:
            order *= n
        if order <= max_order:
            out.append(G.AbelianProduct(invs))
    return out


@pytest.fixture(scope="session")
def groups_up_to_24():
    return catalog_groups(24)


@pytest.fixture(scope="session")
def groups_up_to_12():
    return catalog_groups(12)
