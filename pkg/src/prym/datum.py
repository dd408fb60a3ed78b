"""Prym data and their invariant records.

A datum is a group, a monodromy vector and a normal subgroup K; the tower is
C~ -> C = C~/K -> C~/G = line.  ``compute_invariants`` produces the genera,
ramification, the invariant dimensions of the symmetric squares and the
three criterion flags.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import (CharacterTable, character_table, inner_product,
                         symmetric_square_character)
from .errors import DatumError, InternalInconsistency
from .groups import FiniteGroup, NormalSubgroup
from .hodge import (HodgeDecomposition, MonodromyVector, chevalley_weil,
                    family_dimension, plus_part, quotient_genus)

FLAG_ORDER = ("constant_prym", "noninjective", "xiao")


@dataclass(frozen=True)
class PrymDatum:
    group: FiniteGroup
    mv: MonodromyVector
    K: NormalSubgroup

    @property
    def degree(self) -> int:
        return self.K.order

    @property
    def s(self) -> int:
        return self.mv.s


@dataclass(frozen=True)
class CoverInvariants:
    d: int
    s: int
    gt: int
    g: int
    r: int
    Ntilde: int
    N: int
    family_dim: int
    qh: int  # relative irregularity under the constant-Prym hypothesis
    flags: tuple[str, ...]

    def line(self) -> str:
        flags = ",".join(self.flags) or "none"
        return (f"gt={self.gt} g={self.g} r={self.r} Ntilde={self.Ntilde} "
                f"N={self.N} qh={self.qh} flags={flags}")


def check_criteria(Ntilde: int, N: int, s: int, gt: int, g: int) -> tuple[str, ...]:
    flags = set()
    if Ntilde - N < s - 3:
        flags.add("noninjective")
    if Ntilde == N:
        flags.add("constant_prym")
    if 2 * (gt - g) > gt + 1:
        flags.add("xiao")
    return tuple(f for f in FLAG_ORDER if f in flags)


def validate(datum: PrymDatum) -> None:
    """Raise ``DatumError`` listing every failed condition."""
    G, K = datum.group, datum.K
    failures = datum.mv.failures()
    if datum.mv.group is not G or K.parent is not G:
        failures.append("group-mismatch")
    if not G.is_normal(K.elements):
        failures.append("normality")
    if not 2 <= K.order < G.order:
        failures.append("degree")
    if K.order == 2:
        (sigma,) = K.elements - {0}
        if any(G.mul(t, sigma) != G.mul(sigma, t) for t in range(G.order)):
            failures.append("centrality")
    if failures:
        raise DatumError(failures)


# -- ramification -----------------------------------------------------------


def ramification_indices(datum: PrymDatum) -> list[list[int]]:
    """For each branch point, the ramification index in C~ -> C of every point above it.

    Points over z_i are the cosets y<x_i>; the stabilizer of y<x_i> is
    y<x_i>y^-1 and the index in the K-cover is |y<x_i>y^-1 meet K|.
    """
    G, K = datum.group, datum.K.elements
    out = []
    for x in datum.mv.entries:
        H = G.cyclic_subgroup(x)
        seen = set()
        indices = []
        for y in range(G.order):
            if y in seen:
                continue
            coset = {G.mul(y, h) for h in H}
            seen |= coset
            yinv = G.inv(y)
            stab = {G.mul(G.mul(y, h), yinv) for h in H}
            indices.append(len(stab & K))
        out.append(indices)
    return out


def ramification_r(datum: PrymDatum) -> int:
    """Number of points of C~ ramified over C (coset-orbit count)."""
    return sum(1 for pts in ramification_indices(datum) for e in pts if e > 1)


def ramification_r_central(datum: PrymDatum) -> int:
    """Closed form for a central involution: sum over i with sigma in <x_i> of |G|/ord(x_i)."""
    G = datum.group
    if datum.K.order != 2:
        raise ValueError("closed form needs |K| = 2")
    (sigma,) = datum.K.elements - {0}
    return sum(G.order // G.element_order(x) for x in datum.mv.entries
               if G.cyclic_subgroup_contains(sigma, x))


# -- invariant dimensions -------------------------------------------------


def sym2_invariants(tab: CharacterTable, mult) -> int:
    """dim (S^2 V)^G for V = sum mult[rho] rho, from indicators and duals."""
    total = 0
    dual = tab.dual
    ind = tab.indicators
    for rho, mu in enumerate(mult):
        if not mu:
            continue
        tau = dual[rho]
        if tau == rho:
            if ind[rho] == 1:
                total += mu * (mu + 1) // 2
            elif ind[rho] == -1:
                total += mu * (mu - 1) // 2
        elif rho < tau:
            total += mu * mult[tau]
    return total


def _sym2_by_characters(tab: CharacterTable, chi) -> int:
    triv = tab.irreducibles[tab.trivial]
    val = inner_product(tab, symmetric_square_character(tab, chi), triv)
    if val.denominator != 1 or val < 0:
        raise InternalInconsistency(f"invariant dimension {val} is not a non-negative integer")
    return int(val)


def abelian_sym2(tab: CharacterTable, mult) -> int:
    """The abelian count: sum over 2n = 0 of d(d+1)/2 plus half of sum_{2n != 0} d_n d_-n."""
    dual = tab.dual
    selfdual = sum(m * (m + 1) for rho, m in enumerate(mult) if dual[rho] == rho)
    paired = sum(m * mult[dual[rho]] for rho, m in enumerate(mult) if dual[rho] != rho)
    return (selfdual + paired) // 2


def compute_invariants(datum: PrymDatum, check: bool = True,
                       hd: HodgeDecomposition | None = None) -> CoverInvariants:
    """Full invariant record.

    With ``check`` the symmetric-square dimensions are computed both from
    class functions and from the indicator formula, the minus part is
    cross-checked, and Riemann-Hurwitz for C~ -> C is verified.
    """
    validate(datum)
    tab = character_table(datum.group)
    if hd is None:
        hd = chevalley_weil(datum.mv, tab)
    mult = hd.multiplicities
    plus = hd.plus_multiplicities(datum.K)
    g = sum(d * m for d, m in zip(tab.degrees, plus))
    Ntilde = sym2_invariants(tab, mult)
    N = sym2_invariants(tab, plus)
    r = ramification_r(datum)
    if check:
        _, chi_plus, chi_minus = plus_part(hd, datum.K)
        if _sym2_by_characters(tab, hd.hodge_character) != Ntilde:
            raise InternalInconsistency("Ntilde: class-function and indicator counts differ")
        if _sym2_by_characters(tab, chi_plus) != N:
            raise InternalInconsistency("N: class-function and indicator counts differ")
        if _sym2_by_characters(tab, chi_minus) != Ntilde - N:
            raise InternalInconsistency("Ntilde - N differs from dim (S^2 V_-)^G")
        if datum.group.is_abelian and abelian_sym2(tab, mult) != Ntilde:
            raise InternalInconsistency("abelian pairing count differs")
        if quotient_genus(datum.mv, datum.K) != g:
            raise InternalInconsistency("genus of C from V_+ differs from the quotient cover")
        R = sum(e - 1 for pts in ramification_indices(datum) for e in pts)
        if 2 * hd.genus - 2 != datum.degree * (2 * g - 2) + R:
            raise InternalInconsistency("Riemann-Hurwitz fails for C~ -> C")
    flags = check_criteria(Ntilde, N, datum.s, hd.genus, g)
    return CoverInvariants(d=datum.degree, s=datum.s, gt=hd.genus, g=g, r=r, Ntilde=Ntilde, N=N,
                           family_dim=family_dimension(datum.mv), qh=hd.genus - g, flags=flags)


def fast_invariants(G: FiniteGroup, classes, K: NormalSubgroup) -> tuple[int, int, int, int, int]:
    """(gt, g, Ntilde, N, r) from the class multiset alone; integer arithmetic only.

    Everything here is a class function of the local monodromies, which is
    what lets the search filter class multisets before enumerating vectors.
    """
    from .hodge import genus_from_orders, multiplicities_from_classes

    tab = character_table(G)
    cl = G.classes
    mult = multiplicities_from_classes(tab, classes)
    gens = K.generators or tuple(K.elements)
    plus = tuple(m if tab.contains_in_kernel(rho, gens) else 0 for rho, m in enumerate(mult))
    gt = genus_from_orders(G.order, [cl.orders[c] for c in classes])
    g = sum(d * m for d, m in zip(tab.degrees, plus))
    r = 0
    for c in classes:
        # |<x> meet K| does not depend on the point since K is normal
        if len(G.cyclic_subgroup(cl.representatives[c]) & K.elements) > 1:
            r += G.order // cl.orders[c]
    return int(gt), g, sym2_invariants(tab, mult), sym2_invariants(tab, plus), r


def invariants_from_fast(d: int, s: int, fast) -> CoverInvariants:
    gt, g, Ntilde, N, r = fast
    return CoverInvariants(d=d, s=s, gt=gt, g=g, r=r, Ntilde=Ntilde, N=N, family_dim=s - 3,
                           qh=gt - g, flags=check_criteria(Ntilde, N, s, gt, g))
