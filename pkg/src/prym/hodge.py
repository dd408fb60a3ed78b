"""Canonical representation of a Galois cover of the line.

Given local monodromies x_1..x_s in G (product one, generating), the
multiplicity of a nontrivial irreducible rho in H^0(C, omega) is

    mu(rho) = -deg(rho) + sum_i sum_{a=1}^{m_i-1} N_{i,a} (1 - a/m_i)

where N_{i,a} counts the eigenvalue zeta_{m_i}^a of rho(x_i).  The trivial
representation has multiplicity 0 since the quotient is the line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .characters import CharacterTable, character_table, combine
from .errors import InternalInconsistency, InvalidInput
from .groups import FiniteGroup, NormalSubgroup, quotient_group


@dataclass(frozen=True)
class MonodromyVector:
    group: FiniteGroup
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @property
    def s(self) -> int:
        return len(self.entries)

    @property
    def local_orders(self) -> tuple[int, ...]:
        return tuple(self.group.element_order(x) for x in self.entries)

    @property
    def class_indices(self) -> tuple[int, ...]:
        cl = self.group.classes
        return tuple(cl.class_of[x] for x in self.entries)

    def failures(self) -> list[str]:
        out = []
        if self.group.prod(self.entries) != 0:
            out.append("product")
        if not self.group.is_generating(self.entries):
            out.append("generation")
        if any(x == 0 for x in self.entries):
            out.append("trivial-entry")
        if self.s < 3:
            out.append("length")
        return out

    def format(self) -> str:
        return ";".join(self.group.format_element(x) for x in self.entries)


def genus_from_orders(order: int, local_orders: Sequence[int]) -> Fraction:
    """Riemann-Hurwitz: 2g - 2 = |G| (s - 2 - sum 1/m_i), returned as g (may be non-integral)."""
    s = len(local_orders)
    twog_minus_2 = order * (s - 2 - sum(Fraction(1, m) for m in local_orders))
    return (twog_minus_2 + 2) / 2


def genus_total(mv: MonodromyVector) -> int:
    g = genus_from_orders(mv.group.order, mv.local_orders)
    if g.denominator != 1 or g < 0:
        raise InvalidInput(f"Riemann-Hurwitz gives genus {g}; monodromy vector is inconsistent")
    return int(g)


def family_dimension(mv: MonodromyVector) -> int:
    if mv.s < 3:
        raise InvalidInput("need at least 3 branch points")
    return mv.s - 3


def multiplicities_from_classes(tab: CharacterTable, classes: Sequence[int],
                                strict: bool = True) -> tuple[int, ...] | None:
    """Chevalley-Weil multiplicities for local monodromies in the given conjugacy classes.

    A negative or fractional value means no generating vector has these
    classes; that raises, or returns None when ``strict`` is off.
    """
    cl = tab.classes
    triv = tab.trivial
    out = []
    for rho in range(len(tab)):
        if rho == triv:
            out.append(0)
            continue
        mu = Fraction(-tab.degrees[rho])
        for c in classes:
            m = cl.orders[c]
            mult = tab.eigen[rho][c]
            for a in range(1, m):
                if mult[a]:
                    mu += mult[a] * Fraction(m - a, m)
        if mu.denominator != 1 or mu < 0:
            if not strict:
                return None
            raise InternalInconsistency(f"Chevalley-Weil multiplicity {mu} for irreducible {rho}")
        out.append(int(mu))
    return tuple(out)


@dataclass(frozen=True)
class HodgeDecomposition:
    mv: MonodromyVector
    table: CharacterTable
    multiplicities: tuple[int, ...]
    genus: int

    @property
    def hodge_character(self):
        return combine(self.table, self.multiplicities)

    def plus_multiplicities(self, K: NormalSubgroup) -> tuple[int, ...]:
        tab = self.table
        gens = K.generators or tuple(K.elements)
        return tuple(mu if tab.contains_in_kernel(rho, gens) else 0
                     for rho, mu in enumerate(self.multiplicities))


def chevalley_weil(mv: MonodromyVector, tab: CharacterTable | None = None) -> HodgeDecomposition:
    if tab is None:
        tab = character_table(mv.group)
    if tab.group is not mv.group:
        raise InvalidInput("character table and monodromy vector are over different groups")
    mu = multiplicities_from_classes(tab, mv.class_indices)
    gt = genus_total(mv)
    total = sum(d * m for d, m in zip(tab.degrees, mu))
    if total != gt:
        raise InternalInconsistency(f"sum deg*mu = {total} but Riemann-Hurwitz gives {gt}")
    return HodgeDecomposition(mv, tab, mu, gt)


def plus_part(hd: HodgeDecomposition, K: NormalSubgroup):
    """Return ``(g, chi_plus, chi_minus)`` for the K-invariant split of H^0(omega)."""
    plus = hd.plus_multiplicities(K)
    minus = tuple(a - b for a, b in zip(hd.multiplicities, plus))
    g = sum(d * m for d, m in zip(hd.table.degrees, plus))
    return g, combine(hd.table, plus), combine(hd.table, minus)


def quotient_genus(mv: MonodromyVector, K: NormalSubgroup) -> int:
    """Genus of C/K computed from the projected monodromy in G/K.

    Entries that land in K are dropped: those branch points are unbranched
    downstairs.
    """
    Q, proj = quotient_group(mv.group, K)
    orders = [Q.element_order(proj[x]) for x in mv.entries if proj[x] != 0]
    if Q.order == 1:
        return 0
    g = genus_from_orders(Q.order, orders)
    if g.denominator != 1 or g < 0:
        raise InternalInconsistency(f"quotient genus {g} is not a non-negative integer")
    return int(g)
