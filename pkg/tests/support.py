"""Shared helpers for the test suite: small groups and random Prym data."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from prym.catalog import builtin_catalog
from prym.cyclotomic import Cyclotomic
from prym.datum import PrymDatum
from prym.groups import FiniteGroup, make_dihedral, normal_subgroups
from prym.hodge import MonodromyVector


@lru_cache(maxsize=None)
def small_groups(max_order: int = 24) -> tuple[FiniteGroup, ...]:
    """Catalog groups of bounded order that have a proper nontrivial normal subgroup."""
    out = []
    for entry in builtin_catalog():
        G = entry.build()
        if G.order <= max_order and normal_subgroups(G):
            out.append(G)
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_groups() -> tuple[FiniteGroup, ...]:
    return tuple(e.build() for e in builtin_catalog())


@lru_cache(maxsize=None)
def dihedral(n: int) -> FiniteGroup:
    return make_dihedral(n)


def random_vector(rng: random.Random, G: FiniteGroup, s: int, tries: int = 200):
    for _ in range(tries):
        head = [rng.randrange(1, G.order) for _ in range(s - 1)]
        last = G.inv(G.prod(head))
        vec = head + [last]
        if last != 0 and G.is_generating(vec):
            return vec
    return None


def random_datum(rng: random.Random, groups=None, s_range=(3, 6), degree=None) -> PrymDatum:
    """A valid datum over a random group; ``degree`` restricts |K|."""
    groups = groups or small_groups()
    while True:
        G = rng.choice(groups)
        normals = [K for K in normal_subgroups(G) if degree is None or K.order == degree]
        if not normals:
            continue
        vec = random_vector(rng, G, rng.randint(*s_range))
        if vec is None:
            continue
        return PrymDatum(G, MonodromyVector(G, vec), rng.choice(normals))


# -- independent oracles -------------------------------------------------


def dihedral_oracle(n):
    """Closed-form characters of D_n evaluated on every element, as strings."""
    G = make_dihedral(n)
    rows = []
    kinds = []
    for x in range(G.order):
        p = G.labels[x]
        k = p[0]
        rotation = all(p[i] == (i + k) % n for i in range(n))
        kinds.append((rotation, k))
    one = Cyclotomic.rational(1)
    linear = [lambda rot, k: one, lambda rot, k: one if rot else -one]
    if n % 2 == 0:
        linear.append(lambda rot, k: Cyclotomic.rational((-1) ** k))
        linear.append(lambda rot, k: Cyclotomic.rational((-1) ** k * (1 if rot else -1)))
    for f in linear:
        rows.append(tuple(str(f(rot, k)) for rot, k in kinds))
    for j in range(1, (n - 1) // 2 + 1):
        rows.append(tuple(str(Cyclotomic.zeta(n, j * k) + Cyclotomic.zeta(n, -j * k)
                              if rot else Cyclotomic.rational(0)) for rot, k in kinds))
    return G, sorted(rows)


def residue_labels(tab):
    """For each row of an abelian table, the residue vector c with chi_c(x) = exp(2 pi i sum c_j x_j / n_j)."""
    G = tab.group
    factors = G.presentation[1]
    cl = G.classes
    basis = [G.index_of(tuple(int(t == j) for t in range(len(factors)))) for j in range(len(factors))]
    out = []
    for row in tab.irreducibles:
        c = []
        for j, n in enumerate(factors):
            v = row[cl.class_of[basis[j]]]
            c.append(next(a for a in range(n) if v == Cyclotomic.zeta(n, a)))
        out.append(tuple(c))
    return out


def abelian_dn(G, entries, c):
    """The abelian formula d_n = -1 + sum_i {-<c, x_i>}, with d_0 = 0."""
    if not any(c):
        return 0
    factors = G.presentation[1]
    total = Fraction(-1)
    for x in entries:
        t = sum(Fraction(cj * xj, n) for cj, xj, n in zip(c, G.labels[x], factors))
        total += (-t) % 1
    return total


def naive_key(G, vec):
    """Least conjugate of a vector by a plain loop over G."""
    return min(tuple(G.conj(t, x) for x in vec) for t in range(G.order))
