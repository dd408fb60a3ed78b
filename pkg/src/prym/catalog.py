"""Built-in group catalog for scans.

Entries are ``(name, kind, params)`` triples so they pickle cheaply into
worker processes; ``build`` turns one into a group.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .groups import (FiniteGroup, make_abelian, make_alternating4, make_dicyclic,
                     make_dihedral, make_symmetric)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    params: tuple

    def build(self) -> FiniteGroup:
        if self.kind == "abelian":
            return make_abelian(self.params, name=self.name)
        if self.kind == "dihedral":
            return make_dihedral(*self.params)
        if self.kind == "dicyclic":
            return make_dicyclic(*self.params)
        if self.kind == "A4":
            return make_alternating4()
        if self.kind == "S4":
            return make_symmetric(4)
        if self.kind == "file":
            from .textio import parse_group
            G = parse_group(Path(self.params[0]).read_text())
            G.name = self.name
            return G
        raise ValueError(f"unknown catalog kind {self.kind!r}")


def abelian_invariant_factors(max_order: int) -> list[tuple[int, ...]]:
    """All lists n_1 | n_2 | ... with every n_i >= 2 and product <= max_order."""
    out = []

    def extend(prefix, prod):
        if prefix:
            out.append(tuple(prefix))
        last = prefix[-1] if prefix else 1
        n = last if prefix else 2
        while prod * n <= max_order:
            extend(prefix + [n], prod * n)
            n += last
    extend([], 1)
    out.sort(key=lambda f: (_prod(f), f))
    return out


def _prod(f):
    p = 1
    for v in f:
        p *= v
    return p


def _abelian_name(f):
    return "x".join(f"C{v}" for v in f)


def builtin_catalog(max_abelian_order: int = 64, max_dihedral: int = 16,
                    max_dicyclic_order: int = 32) -> list[CatalogEntry]:
    entries = [CatalogEntry(_abelian_name(f), "abelian", f)
               for f in abelian_invariant_factors(max_abelian_order)]
    entries += [CatalogEntry(f"D{n}", "dihedral", (n,)) for n in range(3, max_dihedral + 1)]
    entries += [CatalogEntry("Q8" if n == 2 else f"Dic{n}", "dicyclic", (n,))
                for n in range(2, max_dicyclic_order // 4 + 1)]
    entries += [CatalogEntry("A4", "A4", ()), CatalogEntry("S4", "S4", ())]
    return entries


def core_catalog() -> list[CatalogEntry]:
    """The three groups carrying the known Xiao counterexamples."""
    return [CatalogEntry("C6", "abelian", (6,)), CatalogEntry("D3", "dihedral", (3,)),
            CatalogEntry("D5", "dihedral", (5,))]


def file_entries(paths) -> list[CatalogEntry]:
    return [CatalogEntry(Path(p).stem, "file", (str(p),)) for p in paths]


def resolve_catalog(spec: str) -> list[CatalogEntry]:
    """``builtin``, ``core``, or a comma-separated list of group files."""
    if spec == "builtin":
        return builtin_catalog()
    if spec == "core":
        return core_catalog()
    return file_entries([p for p in spec.split(",") if p])
