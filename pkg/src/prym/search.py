"""Hurwitz enumeration of Prym data.

Generating vectors of a group with product one are enumerated class
multiset first: every invariant of a datum depends only on the conjugacy
classes of the local monodromies, so a multiset that fails the filter is
dropped before any vector is built.  Surviving multisets are expanded into
vectors up to simultaneous conjugation, and ``scan`` merges vectors into
orbits under braid moves and automorphisms of the group.
"""

from __future__ import annotations

import builtins
import itertools
import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .characters import character_table
from .datum import CoverInvariants, PrymDatum, invariants_from_fast, sym2_invariants
from .errors import InvalidInput
from .groups import FiniteGroup, NormalSubgroup, normal_subgroups
from .hodge import MonodromyVector, multiplicities_from_classes

log = logging.getLogger(__name__)

CRITERIA: dict[str, Callable[[CoverInvariants], bool]] = {
    "none": lambda inv: True,
    "noninj": lambda inv: "noninjective" in inv.flags,
    "constant": lambda inv: "constant_prym" in inv.flags,
    "xiao": lambda inv: "noninjective" in inv.flags and "xiao" in inv.flags,
}

DEFAULT_BUDGET = 10**6


def _criterion(name) -> Callable[[CoverInvariants], bool]:
    if callable(name):
        return name
    try:
        return CRITERIA[name]
    except KeyError:
        raise InvalidInput(f"unknown criterion {name!r}; choose from {sorted(CRITERIA)}") from None


# -- moves and keys -------------------------------------------------------


def braid_move(mv: MonodromyVector, i: int, inverse: bool = False) -> MonodromyVector:
    """Hurwitz move at position i (1-based).

    Forward: (x_i, x_{i+1}) -> (x_i x_{i+1} x_i^-1, x_i).
    Inverse: (x_i, x_{i+1}) -> (x_{i+1}, x_{i+1}^-1 x_i x_{i+1}).
    """
    if not 1 <= i <= mv.s - 1:
        raise InvalidInput(f"braid index {i} out of range 1..{mv.s - 1}")
    G = mv.group
    e = list(mv.entries)
    a, b = e[i - 1], e[i]
    if inverse:
        e[i - 1], e[i] = b, G.conj(G.inv(b), a)
    else:
        e[i - 1], e[i] = G.conj(a, b), a
    return MonodromyVector(G, e)


def _canonical_tuple(G: FiniteGroup, entries: Sequence[int]) -> tuple[int, ...]:
    if G.is_abelian:
        return tuple(entries)
    rows = G.conj_table[:, list(entries)]
    # lexsort sorts by the last key first
    best = np.lexsort(rows.T[::-1])[0]
    return tuple(int(v) for v in rows[best])


def canonical_key(mv: MonodromyVector) -> str:
    """Lexicographically least index tuple over simultaneous conjugation."""
    return ".".join(map(str, _canonical_tuple(mv.group, mv.entries)))


def _key_sort(key: str) -> tuple[int, ...]:
    return tuple(int(v) for v in key.split("."))


# -- automorphisms --------------------------------------------------------


def _generating_set(G: FiniteGroup) -> list[int]:
    if G.presentation[0] == "abelian":
        # the standard basis vectors
        out, f = [], G.presentation[1]
        for j in range(len(f)):
            out.append(G.index_of(tuple(1 if t == j else 0 for t in range(len(f)))))
        return out
    orders = G.element_orders
    gens: list[int] = []
    span = frozenset([0])
    for x in sorted(range(1, G.order), key=lambda x: (-orders[x], x)):
        if x not in span:
            gens.append(x)
            span = G.closure(gens)
            if len(span) == G.order:
                break
    return gens


def _extend_hom(G: FiniteGroup, gens, images):
    """The map on G determined by gens -> images, or None if not an automorphism."""
    phi = [-1] * G.order
    phi[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y = G.mul(x, g)
            v = G.mul(phi[x], h)
            if phi[y] < 0:
                phi[y] = v
                queue.append(y)
            elif phi[y] != v:
                return None
    if len(set(phi)) != G.order:
        return None
    return tuple(phi)


def automorphisms(G: FiniteGroup, cap: int = 200_000) -> list[tuple[int, ...]] | None:
    """All automorphisms as index maps, or None when the candidate space exceeds ``cap``."""
    if "aut" in G.cache:
        return G.cache["aut"]
    gens = _generating_set(G)
    cl = G.classes
    sig = [(G.element_orders[x], cl.sizes[cl.class_of[x]]) for x in range(G.order)]
    cands = [[y for y in range(G.order) if sig[y] == sig[g]] for g in gens]
    total = 1
    for c in cands:
        total *= len(c)
    if total > cap:
        G.cache["aut"] = None
        return None
    out = []
    for images in itertools.product(*cands):
        phi = _extend_hom(G, gens, images)
        if phi is not None:
            out.append(phi)
    G.cache["aut"] = out
    return out


def _perm_closure(perms, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in perms:
                r = tuple(q[v] for v in p)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def automorphism_generators(G: FiniteGroup, cap: int = 200_000):
    """A small generating set of Aut(G), or None if Aut(G) was not enumerated."""
    if "aut_gens" in G.cache:
        return G.cache["aut_gens"]
    auts = automorphisms(G, cap)
    if auts is None:
        G.cache["aut_gens"] = None
        return None
    gens: list[tuple[int, ...]] = []
    span = {tuple(range(G.order))}
    for a in auts:
        if a not in span:
            gens.append(a)
            span = _perm_closure(gens, G.order)
            if len(span) == len(auts):
                break
    G.cache["aut_gens"] = gens
    return gens


# -- per-group search context ---------------------------------------------


@dataclass
class _Context:
    G: FiniteGroup
    normals: list[NormalSubgroup]
    kernel_masks: list[tuple[bool, ...]]
    meets: list[list[bool]]  # meets[k][c]: <x> meet K nontrivial for x in class c
    weights: list[Fraction]
    abel_image: list[int]  # class -> coset representative in G/[G,G]
    mult_cache: dict = field(default_factory=dict)

    @classmethod
    def build(cls, G: FiniteGroup) -> "_Context":
        if "search_ctx" in G.cache:
            return G.cache["search_ctx"]
        tab = character_table(G)
        cl = G.classes
        normals = normal_subgroups(G)
        masks = []
        for K in normals:
            gens = K.generators or tuple(K.elements)
            masks.append(tuple(tab.contains_in_kernel(rho, gens) for rho in range(len(tab))))
        meets = [[len(G.cyclic_subgroup(rep) & K.elements) > 1 for rep in cl.representatives]
                 for K in normals]
        weights = [1 - Fraction(1, m) for m in cl.orders]
        comms = [G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
                 for a in range(G.order) for b in range(G.order)]
        D = G.normal_closure(comms)
        coset = [min(G.mul(x, d) for d in D) for x in range(G.order)]
        ctx = cls(G, normals, masks, meets, weights,
                  [coset[r] for r in cl.representatives])
        ctx.coset = coset
        G.cache["search_ctx"] = ctx
        return ctx

    def invariants(self, classes: tuple[int, ...], k: int) -> CoverInvariants | None:
        """Invariants of any vector with these classes; None if no such vector exists."""
        G = self.G
        tab = character_table(G)
        cl = G.classes
        if classes not in self.mult_cache:
            mult = multiplicities_from_classes(tab, classes, strict=False)
            gt2 = G.order * (len(classes) - 2 - sum(Fraction(1, cl.orders[c]) for c in classes)) + 2
            self.mult_cache[classes] = (None if mult is None else
                                        (mult, int(gt2) // 2, sym2_invariants(tab, mult)))
        if self.mult_cache[classes] is None:
            return None
        mult, gt, Ntilde = self.mult_cache[classes]
        plus = tuple(m if ok else 0 for m, ok in zip(mult, self.kernel_masks[k]))
        g = sum(d * m for d, m in zip(tab.degrees, plus))
        r = sum(G.order // cl.orders[c] for c in classes if self.meets[k][c])
        fast = (gt, g, Ntilde, sym2_invariants(tab, plus), r)
        return invariants_from_fast(self.normals[k].order, len(classes), fast)


@dataclass(frozen=True)
class Finding:
    datum: PrymDatum
    invariants: CoverInvariants
    canonical_key: str
    matched_criteria: frozenset[str]
    k_index: int = 0

    def sort_key(self):
        return (self.datum.s, _key_sort(self.canonical_key), self.k_index)


def _genus_bound(G: FiniteGroup, gmax) -> Fraction | None:
    if gmax is None:
        return None
    return 2 + Fraction(2 * gmax - 2, G.order)


def class_multisets(G: FiniteGroup, s: int, gmax: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nondecreasing class tuples that can carry a generating vector of genus <= gmax.

    Pruned by the partial Riemann-Hurwitz sum, the product condition in the
    abelianization (which fixes the last class of an abelian group), the
    generation condition on the union of the classes and integrality of the
    genus.
    """
    ctx = _Context.build(G)
    cl = G.classes
    nc = len(cl)
    bound = _genus_bound(G, gmax)
    w = ctx.weights
    minw = [Fraction(10)] * (nc + 1)
    for c in range(nc - 1, 0, -1):
        minw[c] = min(w[c], minw[c + 1])
    by_image: dict[int, list[int]] = {}
    for c in range(1, nc):
        by_image.setdefault(ctx.abel_image[c], []).append(c)
    gen_cache: dict[frozenset, bool] = {}

    def generates(classes):
        key = frozenset(classes)
        if key not in gen_cache:
            elems = [x for c in key for x in cl.members[c]]
            gen_cache[key] = G.is_generating(elems)
        return gen_cache[key]

    def finish(chosen, total):
        need = G.inv(G.prod(ctx.abel_image[c] for c in chosen)) if chosen else 0
        need = ctx.coset[need]
        start = chosen[-1] if chosen else 1
        for c in by_image.get(need, ()):
            if c < start:
                continue
            t = total + w[c]
            if bound is not None and t > bound:
                continue
            ms = tuple(chosen) + (c,)
            # 2 gt = |G| (sum(1 - 1/m) - 2) + 2
            gt2 = G.order * (t - 2) + 2
            if gt2.denominator != 1 or gt2 % 2 or gt2 < 0:
                continue
            if generates(ms):
                yield ms

    def dfs(start, chosen, total):
        remaining = s - len(chosen)
        if remaining == 1:
            yield from finish(chosen, total)
            return
        for c in range(start, nc):
            t = total + w[c]
            if bound is not None and t + (remaining - 1) * minw[c] > bound:
                continue
            chosen.append(c)
            yield from dfs(c, chosen, t)
            chosen.pop()

    if s >= 1:
        yield from dfs(1, [], Fraction(0))


def _distinct_orderings(ms: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    a = sorted(ms)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def vectors_for_multiset(G: FiniteGroup, ms: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Generating vectors with product one whose classes form ``ms``, one per conjugacy class."""
    cl = G.classes
    table = G.table
    seen = set()
    if G.is_abelian:
        reps = cl.representatives
        for order in _distinct_orderings(ms):
            vec = tuple(reps[c] for c in order)
            # multiset already satisfied product and generation
            if vec not in seen:
                seen.add(vec)
                yield vec
        return
    s = len(ms)
    for order in _distinct_orderings(ms):
        first = cl.representatives[order[0]]
        last_class = order[-1]
        prefix = [first]

        def dfs(pos, acc):
            if pos == s - 1:
                x = G.inv(acc)
                if cl.class_of[x] != last_class:
                    return
                vec = tuple(prefix) + (x,)
                if not G.is_generating(vec):
                    return
                key = _canonical_tuple(G, vec)
                if key not in seen:
                    seen.add(key)
                    yield key
                return
            for y in cl.members[order[pos]]:
                prefix.append(y)
                yield from dfs(pos + 1, int(table[acc, y]))
                prefix.pop()

        yield from dfs(1, first)


def _make_finding(ctx, vec, k, inv) -> Finding:
    G = ctx.G
    mv = MonodromyVector(G, vec)
    datum = PrymDatum(G, mv, ctx.normals[k])
    return Finding(datum, inv, canonical_key(mv), frozenset(inv.flags), k)


def enumerate(G: FiniteGroup, s: int, criterion="none", gmax: int | None = None,
              prune: bool = True) -> Iterator[Finding]:
    """Findings for every generating vector of length s (up to conjugation) and every
    proper nontrivial normal subgroup K whose invariants pass ``criterion``.
    """
    if s < 4:
        raise InvalidInput("s must be at least 4 for a positive-dimensional family")
    accept = _criterion(criterion)
    ctx = _Context.build(G)
    if not ctx.normals:
        return
    if not prune:
        yield from _enumerate_naive(ctx, s, accept, gmax)
        return
    for ms in class_multisets(G, s, gmax):
        passing = []
        for k in range(len(ctx.normals)):
            inv = ctx.invariants(ms, k)
            if inv is None:
                break
            if accept(inv):
                passing.append((k, inv))
        if not passing:
            continue
        for vec in vectors_for_multiset(G, ms):
            for k, inv in passing:
                yield _make_finding(ctx, vec, k, inv)


def _enumerate_naive(ctx, s, accept, gmax) -> Iterator[Finding]:
    """Loop over all (s-1)-tuples of nonidentity elements; the pruning oracle."""
    G = ctx.G
    cl = G.classes
    seen = set()
    for head in itertools.product(range(1, G.order), repeat=s - 1):
        last = G.inv(G.prod(head))
        if last == 0:
            continue
        vec = head + (last,)
        if not G.is_generating(vec):
            continue
        ms = tuple(sorted(cl.class_of[x] for x in vec))
        gt2 = G.order * (s - 2 - sum(Fraction(1, cl.orders[c]) for c in ms)) + 2
        if gmax is not None and gt2 > 2 * gmax:
            continue
        key = _canonical_tuple(G, vec)
        if key in seen:
            continue
        seen.add(key)
        for k in range(len(ctx.normals)):
            inv = ctx.invariants(ms, k)
            if accept(inv):
                yield _make_finding(ctx, key, k, inv)


# -- orbit merging ----------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    representative: Finding
    members: int  # findings of the input that fell into this orbit
    merged: bool  # False when the search budget ran out or Aut(G) was not used


def _node(G, entries):
    if G.is_abelian:
        return tuple(sorted(entries))
    return _canonical_tuple(G, entries)


def merge_orbits(findings: Sequence[Finding], budget: int = DEFAULT_BUDGET,
                 use_automorphisms: bool = True) -> list[Orbit]:
    """Group findings (all over one group and one s) into braid/automorphism orbits."""
    if not findings:
        return []
    G = findings[0].datum.group
    ctx = _Context.build(G)
    kindex = {K.elements: i for i, K in builtins.enumerate(ctx.normals)}
    auts = automorphism_generators(G) if use_automorphisms else []
    aut_ok = auts is not None
    auts = auts or []
    s = findings[0].datum.s
    node_of = {}
    for idx, f in builtins.enumerate(findings):
        node_of.setdefault((_node(G, f.datum.mv.entries), f.k_index), []).append(idx)
    assigned = [False] * len(findings)
    orbits = []
    for idx in sorted(range(len(findings)), key=lambda i: findings[i].sort_key()):
        if assigned[idx]:
            continue
        f = findings[idx]
        start = (_node(G, f.datum.mv.entries), f.k_index)
        seen = {start}
        queue = deque([start])
        complete = True
        while queue:
            vec, k = queue.popleft()
            nbrs = []
            if not G.is_abelian:
                for i in range(s - 1):
                    e = list(vec)
                    e[i], e[i + 1] = G.conj(e[i], e[i + 1]), e[i]
                    nbrs.append((_node(G, e), k))
            for phi in auts:
                img = frozenset(phi[x] for x in ctx.normals[k].elements)
                nbrs.append((_node(G, [phi[x] for x in vec]), kindex[img]))
            for nb in nbrs:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
            if len(seen) > budget:
                complete = False
                break
        members = 0
        for nd in seen:
            for j in node_of.get(nd, ()):
                if not assigned[j]:
                    assigned[j] = True
                    members += 1
        if not assigned[idx]:
            assigned[idx] = True
            members += 1
        orbits.append(Orbit(f, members, complete and aut_ok))
    return orbits


def finding_for(datum: PrymDatum) -> Finding:
    """Wrap an arbitrary valid datum as a finding (fast invariants, canonical key)."""
    ctx = _Context.build(datum.group)
    k = next(i for i, K in builtins.enumerate(ctx.normals) if K.elements == datum.K.elements)
    inv = ctx.invariants(datum.mv.class_indices, k)
    return _make_finding(ctx, _canonical_tuple(datum.group, datum.mv.entries), k, inv)


def same_orbit(a: PrymDatum, b: PrymDatum, budget: int = DEFAULT_BUDGET) -> bool:
    """True when b is reached from a by braid moves, conjugation and automorphisms.

    Both data must be over the same group object.
    """
    if a.group is not b.group or a.s != b.s:
        return False
    orbits = merge_orbits([finding_for(a), finding_for(b)], budget)
    return len(orbits) == 1


# -- scan -----------------------------------------------------------------


@dataclass(frozen=True)
class ScanUnit:
    index: int
    entry: object  # catalog.CatalogEntry
    s: int


@dataclass(frozen=True)
class UnitResult:
    index: int
    group: str
    s: int
    lines: tuple[str, ...]
    findings: int


_GROUPS: dict = {}


def _group_for(entry) -> FiniteGroup:
    if entry not in _GROUPS:
        _GROUPS[entry] = entry.build()
    return _GROUPS[entry]


def run_unit(unit: ScanUnit, gmax: int, criterion: str, budget: int = DEFAULT_BUDGET) -> UnitResult:
    from .textio import format_record

    G = _group_for(unit.entry)
    found = list(enumerate(G, unit.s, criterion, gmax))
    orbits = merge_orbits(found, budget)
    lines = []
    for orb in sorted(orbits, key=lambda o: o.representative.sort_key()):
        f = orb.representative
        extra = {"orbit": "merged" if orb.merged else "unmerged"}
        lines.append(format_record(f.datum, f.invariants, unit.entry.name, extra))
    return UnitResult(unit.index, unit.entry.name, unit.s, tuple(lines), len(found))


def _run_unit_args(args):
    return run_unit(*args)


def scan(catalog, gmax: int, smax: int, criterion: str = "xiao", jobs: int = 1,
         out=None, smin: int = 4, budget: int = DEFAULT_BUDGET) -> list[UnitResult]:
    """Run ``enumerate`` over catalog x s, merging orbits per (group, s).

    Records go to ``out`` (a writable text stream) as soon as every earlier
    unit has finished, so the output order is catalog order, then s, then
    canonical key, whatever the worker count.
    """
    if gmax < 0 or smax < smin:
        raise InvalidInput("scan bounds must satisfy gmax >= 0 and smax >= 4")
    _criterion(criterion)
    units = [ScanUnit(i, entry, s) for i, (entry, s) in
             builtins.enumerate(itertools.product(catalog, range(smin, smax + 1)))]
    args = [(u, gmax, criterion, budget) for u in units]
    results = []

    def emit(res):
        results.append(res)
        if out is not None:
            for line in res.lines:
                out.write(line + "\n")
            out.flush()
        if res.lines:
            log.info("%s s=%d: %d orbit(s)", res.group, res.s, len(res.lines))

    if jobs <= 1:
        for a in args:
            emit(_run_unit_args(a))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for res in pool.map(_run_unit_args, args, chunksize=1):
                emit(res)
    return results

