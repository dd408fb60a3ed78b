"""The five infinite classes of one-dimensional constant-Prym families.

Each class fixes k as a function of N, an abelian group C2 x C2k (or C2k),
four monodromy columns and the involution sigma.  Columns are written in
the ambient C2k x C2k coordinates, where the C2 factor embeds as
(1, 0) -> (k, 0); the datum itself stores native residues, so an ambient
first coordinate k becomes 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .datum import CoverInvariants, PrymDatum, compute_invariants
from .errors import DatumError, InvalidInput
from .groups import make_abelian, normal_subgroup
from .hodge import MonodromyVector


@dataclass(frozen=True)
class FamilyClass:
    class_id: int
    k_rule: Callable[[int], int]
    # ambient columns as functions of k; a single row for the cyclic class
    columns: Callable[[int], list[tuple[int, ...]]]
    sigma: Callable[[int], tuple[int, ...]]
    # printed closed forms (gt, g, r) as functions of k
    expected: Callable[[int], tuple[int, int, int]]
    cyclic: bool = False
    group_label: str = field(default="C2 x C2k")

    def factors(self, k: int) -> list[int]:
        return [2 * k] if self.cyclic else [2, 2 * k]


def _native(col: tuple[int, ...], k: int, cyclic: bool) -> tuple[int, ...]:
    if cyclic:
        return (col[0] % (2 * k),)
    a, b = col
    if a % k:
        raise InvalidInput(f"ambient column {col} is not in the image of C2 x C{2 * k}")
    return ((a // k) % 2, b % (2 * k))


FAMILIES: dict[int, FamilyClass] = {
    1: FamilyClass(
        1, lambda N: 2 * N + 1,
        lambda k: [(k, 0), (0, k), (0, 2), (k, k - 2)],
        lambda k: (k, k),
        lambda k: (2 * k - 2, k - 1, 2)),
    2: FamilyClass(
        2, lambda N: 2 * N - 1,
        lambda k: [(k, 0), (0, k), (0, 1), (k, k - 1)],
        lambda k: (k, k),
        lambda k: (2 * k - 1, k, 0)),
    3: FamilyClass(
        3, lambda N: N,
        lambda k: [(k, k - 1), (k, k - 1), (0, 1), (0, 1)],
        lambda k: (k, k),
        lambda k: (4 * k - 3, 2 * k - 1, 0)),
    4: FamilyClass(
        4, lambda N: 2 * N,
        lambda k: [(k, 0), (0, k), (0, 1), (k, k - 1)],
        lambda k: (k, k),
        lambda k: (2 * k, k, 0)),
    5: FamilyClass(
        5, lambda N: 2 * N,
        lambda k: [(1,), (1,), (k - 1,), (k - 1,)],
        lambda k: (k,),
        lambda k: (2 * k - 1, k - 1, 4),
        cyclic=True, group_label="C2k"),
}


def family_datum(class_id: int, N: int) -> PrymDatum:
    if class_id not in FAMILIES:
        raise InvalidInput(f"family class must be 1..5, got {class_id}")
    if N < 1:
        raise InvalidInput(f"N must be >= 1, got {N}")
    fam = FAMILIES[class_id]
    k = fam.k_rule(N)
    G = make_abelian(fam.factors(k))
    entries = [G.index_of(_native(c, k, fam.cyclic)) for c in fam.columns(k)]
    if any(G.element_order(x) < 2 for x in entries):
        raise InvalidInput(f"class {class_id} with N = {N} has a trivial local monodromy")
    sigma = G.index_of(_native(fam.sigma(k), k, fam.cyclic))
    return PrymDatum(G, MonodromyVector(G, entries), normal_subgroup(G, [sigma]))


@dataclass(frozen=True)
class FamilyRow:
    class_id: int
    N: int
    k: int
    group: str
    predicted: tuple[int, int, int]
    invariants: CoverInvariants | None
    mismatches: tuple[str, ...]
    error: str | None = None

    @property
    def match(self) -> bool:
        return self.error is None and not self.mismatches


def verify_family(class_id: int, n_max: int) -> list[FamilyRow]:
    """Compare computed invariants with the printed closed forms for N = 1..n_max.

    A row matches when (gt, g, r) equal the printed values, Ntilde = N = the
    parameter N, and the constant_prym flag is set.
    """
    fam = FAMILIES[class_id]
    rows = []
    for N in range(1, n_max + 1):
        k = fam.k_rule(N)
        label = "x".join(f"C{f}" for f in fam.factors(k))
        predicted = fam.expected(k)
        try:
            inv = compute_invariants(family_datum(class_id, N))
        except (InvalidInput, DatumError) as exc:
            rows.append(FamilyRow(class_id, N, k, label, predicted, None, (), str(exc)))
            continue
        mism = []
        for name, want, got in zip(("gt", "g", "r"), predicted, (inv.gt, inv.g, inv.r)):
            if want != got:
                mism.append(f"{name}: table {want} != computed {got}")
        if inv.Ntilde != N:
            mism.append(f"Ntilde: {inv.Ntilde} != N = {N}")
        if inv.N != N:
            mism.append(f"N_dim: {inv.N} != N = {N}")
        if "constant_prym" not in inv.flags:
            mism.append("constant_prym not set")
        rows.append(FamilyRow(class_id, N, k, label, predicted, inv, tuple(mism)))
    return rows
