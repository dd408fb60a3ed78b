from fractions import Fraction

import pytest

from prym.characters import (character_table, dixon_prime, eigenvalue_multiplicities,
                             inner_product, regular_character)
from prym.groups import make_abelian, make_alternating4, make_dicyclic, make_dihedral, make_symmetric

from support import catalog_groups, dihedral_oracle


def _rows_as_strings(tab):
    return [tuple(str(v) for v in row) for row in tab.irreducibles]


@pytest.mark.parametrize("n", range(3, 11))
def test_dihedral_table_matches_closed_form(n):
    G, oracle = dihedral_oracle(n)
    tab = character_table(G, method="dixon")
    cl = G.classes
    computed = sorted(tuple(str(row[cl.class_of[x]]) for x in range(G.order))
                      for row in tab.irreducibles)
    assert computed == oracle


@pytest.mark.parametrize("factors", [[2], [6], [2, 2], [2, 6], [3, 3], [2, 2, 2], [4, 4], [2, 12],
                                     [3, 6], [24]])
def test_abelian_dixon_matches_closed_form(factors):
    G = make_abelian(factors)
    a = character_table(G, method="dixon")
    b = character_table(G, method="abelian")
    assert _rows_as_strings(a) == _rows_as_strings(b)


def test_orthogonality_for_every_catalog_group():
    for G in catalog_groups():
        tab = character_table(G)
        gram = tab.gram_matrix()
        n = len(tab)
        assert n == len(G.classes)
        assert all(gram[i][j] == (i == j) for i in range(n) for j in range(n)), G.name
        assert sum(d * d for d in tab.degrees) == G.order


def test_trivial_character_first():
    for G in (make_dihedral(5), make_symmetric(4), make_abelian([2, 6])):
        tab = character_table(G)
        assert tab.trivial == 0
        assert all(v == 1 for v in tab.irreducibles[0])


@pytest.mark.parametrize("G, degrees", [
    (make_dihedral(3), [1, 1, 2]),
    (make_dihedral(5), [1, 1, 2, 2]),
    (make_symmetric(4), [1, 1, 2, 3, 3]),
    (make_alternating4(), [1, 1, 1, 3]),
    (make_dicyclic(2), [1, 1, 1, 1, 2]),
])
def test_degrees(G, degrees):
    assert sorted(character_table(G).degrees) == degrees


@pytest.mark.parametrize("order, exponent, p", [(6, 6, 7), (10, 10, 11), (24, 12, 13), (8, 4, 13)])
def test_dixon_prime(order, exponent, p):
    assert dixon_prime(order, exponent) == p


def test_quaternion_indicator():
    tab = character_table(make_dicyclic(2))
    two = tab.degrees.index(2)
    assert tab.indicators[two] == -1


def test_indicator_sum_counts_square_roots_of_identity():
    for G in catalog_groups():
        if G.order > 32:
            continue
        tab = character_table(G)
        roots = sum(1 for x in range(G.order) if G.mul(x, x) == 0)
        assert sum(i * d for i, d in zip(tab.indicators, tab.degrees)) == roots


def test_regular_character_decomposition():
    tab = character_table(make_symmetric(4))
    reg = regular_character(tab)
    for rho, row in enumerate(tab.irreducibles):
        assert inner_product(tab, reg, row) == tab.degrees[rho]


def test_eigenvalue_multiplicities_sum_to_degree():
    G = make_symmetric(4)
    tab = character_table(G)
    for rho, row in enumerate(tab.irreducibles):
        for x in range(G.order):
            mult = eigenvalue_multiplicities(tab, row, x)
            assert sum(mult) == tab.degrees[rho]
            assert len(mult) == G.element_order(x)


def test_dual_is_complex_conjugate():
    tab = character_table(make_abelian([12]))
    for rho, tau in enumerate(tab.dual):
        assert [v.conjugate() for v in tab.irreducibles[rho]] == list(tab.irreducibles[tau])


def test_inner_products_are_fractions():
    tab = character_table(make_dihedral(4))
    assert inner_product(tab, tab.irreducibles[0], tab.irreducibles[0]) == Fraction(1)
