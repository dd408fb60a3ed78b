import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from prym.characters import character_table
from prym.errors import InvalidInput
from prym.groups import make_abelian
from prym.hodge import (MonodromyVector, chevalley_weil, genus_from_orders, genus_total,
                        quotient_genus)

from support import abelian_dn, random_datum, random_vector, residue_labels, small_groups

ABELIAN = [make_abelian(f) for f in ([6], [2, 6], [12], [3, 3], [2, 2, 2], [2, 4], [10], [4, 4])]
PROPERTY = settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@PROPERTY
@given(st.integers(0, 2**32))
def test_chevalley_weil_sums_to_genus(seed):
    datum = random_datum(random.Random(seed))
    hd = chevalley_weil(datum.mv)
    assert sum(d * m for d, m in zip(hd.table.degrees, hd.multiplicities)) == genus_total(datum.mv)
    assert hd.multiplicities[hd.table.trivial] == 0
    assert all(m >= 0 for m in hd.multiplicities)


@PROPERTY
@given(st.integers(0, 2**32))
def test_abelian_specialization(seed):
    rng = random.Random(seed)
    G = rng.choice(ABELIAN)
    vec = None
    while vec is None:
        vec = random_vector(rng, G, rng.randint(3, 6))
    hd = chevalley_weil(MonodromyVector(G, vec))
    labels = residue_labels(hd.table)
    for rho, c in enumerate(labels):
        assert hd.multiplicities[rho] == abelian_dn(G, vec, c)


def test_example1_isotypic_dimensions():
    G = make_abelian([6])
    hd = chevalley_weil(MonodromyVector(G, [3, 5, 5, 5]))
    labels = residue_labels(hd.table)
    dims = {c[0]: m for c, m in zip(labels, hd.multiplicities)}
    assert (dims[3], dims[4], dims[5]) == (1, 1, 2)
    assert dims[1] == dims[2] == 0


@pytest.mark.parametrize("order, orders, g", [
    (6, [2, 6, 6, 6], Fraction(4)),
    (10, [2] * 6, Fraction(6)),
    (6, [2] * 10, Fraction(10)),
    (2, [2] * 6, Fraction(2)),
    (4, [4, 4, 4], Fraction(3, 2)),
])
def test_genus_from_orders(order, orders, g):
    assert genus_from_orders(order, orders) == g


def test_inconsistent_vector_rejected():
    G = make_abelian([4])
    with pytest.raises(InvalidInput):
        genus_total(MonodromyVector(G, [1, 1, 1]))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_plus_part_matches_quotient_genus(seed):
    datum = random_datum(random.Random(seed))
    hd = chevalley_weil(datum.mv)
    tab = hd.table
    plus = hd.plus_multiplicities(datum.K)
    assert sum(d * m for d, m in zip(tab.degrees, plus)) == quotient_genus(datum.mv, datum.K)


def test_hodge_character_degree_is_genus():
    for G in small_groups()[:10]:
        vec = random_vector(random.Random(G.order), G, 5)
        if vec is None:
            continue
        hd = chevalley_weil(MonodromyVector(G, vec))
        assert hd.hodge_character[0] == hd.genus
        assert character_table(G) is hd.table
