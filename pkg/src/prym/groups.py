"""Finite groups as dense multiplication tables.

Elements are the integers ``0..order-1`` with 0 the identity.  Every group
materializes its full Cayley table at construction, so all later operations
are table lookups.  Groups are immutable once built; derived data (classes,
character tables, automorphisms) is cached on the instance.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput, TooLarge

DEFAULT_PERM_CAP = 10000


class FiniteGroup:
    """A finite group with elements indexed ``0..order-1``.

    ``presentation`` is one of ``("abelian", factors)``,
    ``("perm", degree, generators)`` (generators as 0-based image tuples) or
    ``("table",)``.  ``labels`` holds the external form of each element:
    residue tuples for abelian groups, image tuples for permutation groups.
    """

    def __init__(self, table, presentation, labels=None, name="G"):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise InvalidInput("multiplication table must be square")
        self.table = table
        self.order = n
        self.presentation = presentation
        self.labels = list(labels) if labels is not None else list(range(n))
        self.name = name
        self._rows = [tuple(int(v) for v in row) for row in table]
        inv = np.empty(n, dtype=np.int64)
        idx = np.nonzero(table == 0)
        if len(idx[0]) != n:
            raise InvalidInput("table is not a group: inverses are not unique")
        inv[idx[0]] = idx[1]
        self.inv_table = inv
        self._inv = [int(v) for v in inv]
        self._label_index = None
        self.cache: dict = {}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- basic arithmetic --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def prod(self, elems: Iterable[int]) -> int:
        rows = self._rows
        x = 0
        for e in elems:
            x = rows[x][e]
        return x

    def conj(self, t: int, x: int) -> int:
        """Return ``t x t^-1``."""
        rows = self._rows
        return rows[rows[t][x]][self._inv[t]]

    def power(self, a: int, k: int) -> int:
        k %= self.element_order(a)
        x = 0
        for _ in range(k):
            x = self._rows[x][a]
        return x

    @cached_property
    def element_orders(self) -> list[int]:
        orders = [0] * self.order
        for a in range(self.order):
            x, m = a, 1
            while x != 0:
                x = self._rows[x][a]
                m += 1
            orders[a] = m
        return orders

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.element_orders, 1)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``conj_table[t, x] = t x t^-1``."""
        return self.table[self.table, self.inv_table[:, None]]

    # -- subgroups ---------------------------------------------------------

    def closure(self, elems: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``elems``."""
        gens = sorted({int(e) for e in elems} - {0})
        seen = {0}
        frontier = [0]
        rows = self._rows
        while frontier:
            nxt = []
            for x in frontier:
                row = rows[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_generating(self, elems: Iterable[int]) -> bool:
        return len(self.closure(elems)) == self.order

    def cyclic_subgroup_contains(self, h: int, g: int) -> bool:
        """True iff ``h`` is a power of ``g``."""
        x = 0
        for _ in range(self.element_order(g)):
            if x == h:
                return True
            x = self._rows[x][g]
        return False

    def cyclic_subgroup(self, g: int) -> frozenset[int]:
        out, x = [0], g
        while x != 0:
            out.append(x)
            x = self._rows[x][g]
        return frozenset(out)

    def is_normal(self, subset: frozenset[int]) -> bool:
        for x in subset:
            for t in range(self.order):
                if self.conj(t, x) not in subset:
                    return False
        return True

    def normal_closure(self, elems: Iterable[int]) -> frozenset[int]:
        elems = set(elems)
        while True:
            h = self.closure(elems)
            conj = {self.conj(t, x) for x in h for t in range(self.order)}
            if conj <= h:
                return h
            elems = set(h) | conj

    @cached_property
    def classes(self) -> "ConjugacyClasses":
        return conjugacy_classes(self)

    # -- labels ------------------------------------------------------------

    def index_of(self, label) -> int:
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._label_index[label]
        except KeyError:
            raise InvalidInput(f"{label!r} is not an element of {self.name}") from None

    def format_element(self, x: int) -> str:
        kind = self.presentation[0]
        lab = self.labels[x]
        if kind == "abelian":
            return ",".join(str(v) for v in lab)
        if kind == "perm":
            return format_cycles(lab)
        return str(lab)

    def parse_element(self, text: str) -> int:
        kind = self.presentation[0]
        text = text.strip()
        if kind == "abelian":
            factors = self.presentation[1]
            parts = [p for p in re.split(r"[,\s]+", text.strip("()")) if p]
            if len(parts) != len(factors):
                raise InvalidInput(f"expected {len(factors)} residues in {text!r}")
            try:
                vals = tuple(int(p) % f for p, f in zip(parts, factors))
            except ValueError:
                raise InvalidInput(f"bad residue in {text!r}") from None
            return self.index_of(vals)
        if kind == "perm":
            degree = self.presentation[1]
            return self.index_of(parse_cycles(text, degree))
        try:
            return int(text)
        except ValueError:
            raise InvalidInput(f"bad element {text!r}") from None

    def spec(self) -> str:
        """Compact one-token description, re-parseable by ``parse_group_spec``."""
        kind = self.presentation[0]
        if kind == "abelian":
            return "abelian:" + ",".join(str(f) for f in self.presentation[1])
        if kind == "perm":
            _, degree, gens = self.presentation
            return f"perm:{degree}:" + ";".join(format_cycles(g) for g in gens)
        raise InvalidInput("table-presented groups have no compact spec")

    # -- checks ------------------------------------------------------------

    def check_axioms(self, max_order: int = 200) -> None:
        """Exhaustive associativity, identity and inverse checks."""
        n = self.order
        t = self.table
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise InvalidInput("0 is not the identity")
        if not np.all(t[np.arange(n), self.inv_table] == 0):
            raise InvalidInput("inverse table is wrong")
        for row in t:
            if len(set(row.tolist())) != n:
                raise InvalidInput("table is not a Latin square")
        if n <= max_order:
            # (ab)c == a(bc) for all triples, one a at a time
            for a in range(n):
                lhs = t[t[a]]          # lhs[b, c] = (ab)c
                rhs = t[a][t]          # rhs[b, c] = a(bc)
                if not np.array_equal(lhs, rhs):
                    raise InvalidInput("table is not associative")


@dataclass(frozen=True)
class ConjugacyClasses:
    group: FiniteGroup
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    inverse_class: tuple[int, ...]
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self):
        return len(self.representatives)

    def power_map(self, c: int, k: int) -> int:
        """Class of ``rep_c ** k``."""
        k %= self.orders[c]
        key = (c, k)
        if key not in self._powers:
            self._powers[key] = self.class_of[self.group.power(self.representatives[c], k)]
        return self._powers[key]


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Partition ``G`` into classes; class index order follows the minimal member."""
    n = G.order
    class_of = [-1] * n
    reps, members = [], []
    ct = G.conj_table
    for x in range(n):
        if class_of[x] >= 0:
            continue
        orbit = sorted(set(ct[:, x].tolist()))
        for y in orbit:
            class_of[y] = len(reps)
        reps.append(x)
        members.append(tuple(orbit))
    orders = tuple(G.element_order(r) for r in reps)
    inverse_class = tuple(class_of[G.inv(r)] for r in reps)
    return ConjugacyClasses(G, tuple(class_of), tuple(reps), tuple(len(m) for m in members),
                            tuple(members), orders, inverse_class)


@dataclass(frozen=True)
class NormalSubgroup:
    parent: FiniteGroup
    elements: frozenset[int]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def member(self, x: int) -> bool:
        return x in self.elements


def normal_subgroup(G: FiniteGroup, generators: Sequence[int]) -> NormalSubgroup:
    """Subgroup generated by ``generators``; raises if it is not normal."""
    elems = G.closure(generators)
    if not G.is_normal(elems):
        raise InvalidInput("subgroup is not normal")
    return NormalSubgroup(G, elems, tuple(generators))


def subgroup_generators(G: FiniteGroup, elems) -> tuple[int, ...]:
    """A generating set of the subgroup ``elems``, chosen greedily by index."""
    gens: list[int] = []
    span = frozenset([0])
    for x in sorted(elems):
        if x not in span:
            gens.append(x)
            span = G.closure(gens)
    return tuple(gens)


def normal_subgroups(G: FiniteGroup, proper: bool = True) -> list[NormalSubgroup]:
    """All normal subgroups, as joins of normal closures of single classes.

    With ``proper`` the trivial and full subgroups are dropped.  Sorted by
    (order, sorted elements) so the list is deterministic.
    """
    key = ("normal_subgroups", proper)
    if key in G.cache:
        return G.cache[key]
    cl = G.classes
    base = {}
    for c in range(1, len(cl)):
        ncl = G.normal_closure([cl.representatives[c]])
        base.setdefault(ncl, (cl.representatives[c],))
    found = dict(base)
    frontier = list(base)
    rows = G._rows
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(base):
                if b <= a:
                    continue
                j = frozenset(rows[x][y] for x in a for y in b)
                if j not in found:
                    found[j] = tuple(sorted(set(found[a]) | set(base[b])))
                    nxt.append(j)
        frontier = nxt
    out = []
    for elems, gens in found.items():
        if proper and len(elems) == G.order:
            continue
        out.append(NormalSubgroup(G, elems, subgroup_generators(G, elems)))
    if not proper:
        out.append(NormalSubgroup(G, frozenset([0]), ()))
    out.sort(key=lambda K: (K.order, sorted(K.elements)))
    G.cache[key] = out
    return out


def quotient_group(G: FiniteGroup, K: NormalSubgroup):
    """Return ``(G/K, projection)`` with ``projection`` a list indexed by element."""
    if not G.is_normal(K.elements):
        raise InvalidInput("quotient by a non-normal subgroup")
    coset_min = {}
    proj = [0] * G.order
    reps = []
    for x in range(G.order):
        m = min(G.mul(x, k) for k in K.elements)
        if m not in coset_min:
            coset_min[m] = len(reps)
            reps.append(m)
        proj[x] = coset_min[m]
    table = [[proj[G.mul(a, b)] for b in reps] for a in reps]
    labels = [f"{G.format_element(r)}K" for r in reps]
    Q = FiniteGroup(table, ("table",), labels, name=f"{G.name}/K")
    return Q, proj


# -- constructors -----------------------------------------------------------


def make_abelian(invariant_factors: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Direct product of cyclic groups; elements are residue tuples in mixed-radix order."""
    factors = tuple(int(f) for f in invariant_factors)
    if not factors or any(f < 2 for f in factors):
        raise InvalidInput(f"abelian factors must be a nonempty list of integers >= 2, got {list(invariant_factors)}")
    labels = list(itertools.product(*[range(f) for f in factors]))
    arr = np.array(labels, dtype=np.int64)
    radix = np.array([math.prod(factors[i + 1:]) for i in range(len(factors))], dtype=np.int64)
    mods = np.array(factors, dtype=np.int64)
    summed = (arr[:, None, :] + arr[None, :, :]) % mods
    table = summed @ radix
    if name is None:
        name = "x".join(f"C{f}" for f in factors)
    return FiniteGroup(table, ("abelian", factors), labels, name=name)


def make_permutation_group(degree: int, generators: Sequence[Sequence[int]],
                           cap: int = DEFAULT_PERM_CAP, name: str = "G") -> FiniteGroup:
    """Closure of permutation generators (0-based image tuples).

    The product ``a*b`` applies ``a`` first, then ``b``.
    """
    if degree < 1:
        raise InvalidInput("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidInput(f"generator {g} is not a bijection on {degree} points")
        gens.append(g)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = tuple(g[v] for v in x)
            if y not in index:
                if len(elems) >= cap:
                    raise TooLarge(f"permutation group exceeds cap of {cap} elements")
                index[y] = len(elems)
                elems.append(y)
        i += 1
    P = np.array(elems, dtype=np.int64).reshape(len(elems), degree)
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        prods = P[:, P[a]]  # row b: b(a(i)), i.e. a then b
        table[a] = [index[tuple(row)] for row in prods.tolist()]
    return FiniteGroup(table, ("perm", degree, tuple(gens)), elems, name=name)


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n acting on n points."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return make_permutation_group(n, [rot, ref], name=f"D{n}")


def make_dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n, via its regular permutation representation.

    Elements a^i x^j with a^(2n) = 1, x^2 = a^n, x^-1 a x = a^-1.
    """
    if n < 2:
        raise InvalidInput("dicyclic groups need n >= 2")
    m = 2 * n
    elems = [(i, j) for j in range(2) for i in range(m)]
    pos = {e: k for k, e in enumerate(elems)}

    def mul(u, v):
        (i, j), (k, l) = u, v
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    # right-regular action: point p goes to p*g
    gens = [tuple(pos[mul(e, g)] for e in elems) for g in [(1, 0), (0, 1)]]
    name = "Q8" if n == 2 else f"Dic{n}"
    return make_permutation_group(len(elems), gens, name=name)


def make_symmetric(n: int) -> FiniteGroup:
    cyc = tuple((i + 1) % n for i in range(n))
    tr = (1, 0) + tuple(range(2, n))
    return make_permutation_group(n, [cyc, tr], name=f"S{n}")


def make_alternating4() -> FiniteGroup:
    return make_permutation_group(4, [(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


# -- cycle notation ---------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse a product of cycles such as ``(1 2 3)(2 5)`` into a 0-based image tuple.

    Points are 1-based; cycles may be space- or comma-separated and need not
    be disjoint.  The word is read left to right, leftmost applied first.
    """
    text = text.strip()
    if not text:
        raise InvalidInput("empty permutation")
    if _CYCLE_RE.sub("", text).strip():
        raise InvalidInput(f"bad cycle notation {text!r}")
    perm = list(range(degree))
    for body in _CYCLE_RE.findall(text):
        pts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
        try:
            pts = [int(p) - 1 for p in pts]
        except ValueError:
            raise InvalidInput(f"bad point in cycle ({body})") from None
        if any(p < 0 or p >= degree for p in pts) or len(set(pts)) != len(pts):
            raise InvalidInput(f"cycle ({body}) is not a cycle on {degree} points")
        if len(pts) < 2:
            continue
        step = {pts[i]: pts[(i + 1) % len(pts)] for i in range(len(pts))}
        perm = [step.get(v, v) for v in perm]
    return tuple(perm)


def format_cycles(perm: Sequence[int]) -> str:
    """Disjoint-cycle notation, 1-based, comma separated; identity is ``()``."""
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append("(" + ",".join(str(v + 1) for v in cyc) + ")")
    return "".join(out) or "()"


def parse_group_spec(spec: str) -> FiniteGroup:
    """Inverse of ``FiniteGroup.spec``."""
    kind, _, rest = spec.partition(":")
    if kind == "abelian":
        try:
            factors = [int(v) for v in rest.split(",") if v]
        except ValueError:
            raise InvalidInput(f"bad group spec {spec!r}") from None
        return make_abelian(factors)
    if kind == "perm":
        deg, _, gens = rest.partition(":")
        try:
            degree = int(deg)
        except ValueError:
            raise InvalidInput(f"bad group spec {spec!r}") from None
        perms = [parse_cycles(g, degree) for g in gens.split(";") if g]
        return make_permutation_group(degree, perms)
    raise InvalidInput(f"unknown group spec {spec!r}")
