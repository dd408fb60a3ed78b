"""Exact character tables, inner products and local eigenvalue data.

Tables are built with the Burnside-Dixon method: class multiplication
coefficients give matrices whose common eigenvectors (over a prime field
F_p with p = 1 mod exponent) are the central characters.  Character values
are lifted back to cyclotomic integers through the eigenvalue multiplicities
of each class representative, which are themselves kept in the table since
the Chevalley-Weil count needs exactly those numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic, reduction_matrix
from .errors import InternalInconsistency, TooLarge
from .groups import FiniteGroup

DEFAULT_TABLE_CAP = 2000

Character = tuple  # tuple of Cyclotomic, indexed by class


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    irreducibles: tuple[Character, ...]
    degrees: tuple[int, ...]
    # eigen[rho][c][a]: multiplicity of zeta_m^a as an eigenvalue of rho(rep_c), m = ord(rep_c)
    eigen: tuple[tuple[tuple[int, ...], ...], ...]
    prime: int | None = None

    @property
    def classes(self):
        return self.group.classes

    def __len__(self):
        return len(self.irreducibles)

    @cached_property
    def trivial(self) -> int:
        for i, row in enumerate(self.eigen):
            if all(row[c][0] == 1 for c in range(len(row))) and self.degrees[i] == 1:
                return i
        raise InternalInconsistency("no trivial character")

    @cached_property
    def dual(self) -> tuple[int, ...]:
        """Index of the complex-conjugate character of each row."""
        cl = self.classes
        keyed = {}
        for i, row in enumerate(self.eigen):
            keyed[tuple(row)] = i
        out = []
        for row in self.eigen:
            conj = tuple(tuple(mult[(-a) % len(mult)] for a in range(len(mult))) for mult in row)
            out.append(keyed[conj])
        assert all(len(cl.representatives) == len(r) for r in self.eigen)
        return tuple(out)

    @cached_property
    def indicators(self) -> tuple[int, ...]:
        """Frobenius-Schur indicators, (1/|G|) sum_g chi(g^2)."""
        cl = self.classes
        out = []
        for chi in self.irreducibles:
            total = Cyclotomic.rational(0)
            for c in range(len(cl)):
                total = total + chi[cl.power_map(c, 2)] * cl.sizes[c]
            val = total.to_fraction() / self.group.order
            if val.denominator != 1 or val not in (-1, 0, 1):
                raise InternalInconsistency(f"indicator {val} is not in {{-1,0,1}}")
            out.append(int(val))
        return tuple(out)

    def contains_in_kernel(self, rho: int, elems) -> bool:
        """True iff every element of ``elems`` acts trivially in ``rho``."""
        cl = self.classes
        d = self.degrees[rho]
        return all(self.eigen[rho][cl.class_of[x]][0] == d for x in elems)

    def value(self, rho: int, x: int) -> Cyclotomic:
        return self.irreducibles[rho][self.classes.class_of[x]]

    @cached_property
    def conductor(self) -> int:
        return self.group.exponent

    def full_basis(self) -> np.ndarray:
        """Integer array (rows, classes, e): values in the unreduced basis z_e^0..z_e^(e-1)."""
        e = self.conductor
        cl = self.classes
        out = np.zeros((len(self), len(cl), e), dtype=np.int64)
        for i, row in enumerate(self.eigen):
            for c, mult in enumerate(row):
                step = e // cl.orders[c]
                for a, n in enumerate(mult):
                    out[i, c, a * step] += n
        return out

    def gram_matrix(self) -> list[list[Fraction]]:
        """All inner products <chi_i, chi_j>, computed exactly in Z[C_e]."""
        e = self.conductor
        A = self.full_basis()
        sizes = np.array(self.classes.sizes, dtype=np.int64)
        W = np.zeros((len(self), len(self), e), dtype=np.int64)
        Asz = A * sizes[None, :, None]
        for t in range(e):
            # conj(b) has coefficient b[j] at -j, so a*conj(b) collects a[i]b[j] at i - j
            W[:, :, t] = np.einsum("rki,ski->rs", Asz, np.roll(A, t, axis=2))
        R = reduction_matrix(e).astype(np.int64)
        red = W @ R
        out = []
        for i in range(len(self)):
            row = []
            for j in range(len(self)):
                v = red[i, j]
                if np.any(v[1:]):
                    raise InternalInconsistency("inner product is not rational")
                row.append(Fraction(int(v[0]), self.group.order))
            out.append(row)
        return out


# -- inner products and class functions ------------------------------------


def inner_product(tab: CharacterTable, a: Sequence[Cyclotomic], b: Sequence[Cyclotomic]) -> Fraction:
    """(1/|G|) sum_classes size * a * conj(b)."""
    cl = tab.classes
    total = Cyclotomic.rational(0)
    for c in range(len(cl)):
        total = total + a[c] * b[c].conjugate() * cl.sizes[c]
    return total.to_fraction() / tab.group.order


def symmetric_square_character(tab: CharacterTable, chi: Sequence[Cyclotomic]) -> Character:
    """g -> (chi(g)^2 + chi(g^2)) / 2."""
    cl = tab.classes
    return tuple((chi[c] * chi[c] + chi[cl.power_map(c, 2)]) / 2 for c in range(len(cl)))


def combine(tab: CharacterTable, coeffs: Sequence[int]) -> Character:
    """sum_rho coeffs[rho] * chi_rho as a class function."""
    out = [Cyclotomic.rational(0)] * len(tab.classes)
    for rho, n in enumerate(coeffs):
        if n:
            out = [o + v * n for o, v in zip(out, tab.irreducibles[rho])]
    return tuple(out)


def regular_character(tab: CharacterTable) -> Character:
    n = tab.group.order
    return tuple(Cyclotomic.rational(n if c == 0 else 0) for c in range(len(tab.classes)))


def eigenvalue_multiplicities(tab: CharacterTable, chi: Sequence[Cyclotomic], x: int) -> list[int]:
    """Multiplicities N_a of zeta_m^a among the eigenvalues of rho(x), m = ord(x).

    N_a = (1/m) sum_j chi(x^j) zeta_m^(-a j), evaluated in exact arithmetic.
    """
    G = tab.group
    cl = tab.classes
    m = G.element_order(x)
    vals = [chi[cl.class_of[G.power(x, j)]] for j in range(m)]
    out = []
    for a in range(m):
        total = Cyclotomic.rational(0)
        for j, v in enumerate(vals):
            total = total + v * Cyclotomic.zeta(m, -a * j)
        q = total.to_fraction() / m if total.is_rational() else None
        if q is None or q.denominator != 1 or q < 0:
            raise InternalInconsistency(f"class function is not a character at element {x}")
        out.append(int(q))
    return out


# -- construction ----------------------------------------------------------


def character_table(G: FiniteGroup, method: str = "auto", cap: int = DEFAULT_TABLE_CAP) -> CharacterTable:
    """Irreducible characters of ``G``, cached on the group.

    ``method`` is ``dixon``, ``abelian`` (closed-form dual group; abelian
    presentations only) or ``auto`` (closed form when available).
    """
    if G.order > cap:
        raise TooLarge(f"group order {G.order} exceeds character table cap {cap}")
    if method == "auto":
        method = "abelian" if G.presentation[0] == "abelian" else "dixon"
    key = ("character_table", method)
    if key not in G.cache:
        if method == "abelian":
            G.cache[key] = _abelian_table(G)
        elif method == "dixon":
            G.cache[key] = _dixon_table(G)
        else:
            raise ValueError(f"unknown method {method!r}")
    return G.cache[key]


def _finish(G: FiniteGroup, eigen_rows, degrees, prime) -> CharacterTable:
    cl = G.classes
    e = G.exponent
    rows = []
    for mults in eigen_rows:
        vals = []
        for c, mult in enumerate(mults):
            step = e // cl.orders[c]
            vals.append(Cyclotomic.from_exponents(e, {a * step: n for a, n in enumerate(mult) if n}))
        rows.append(tuple(vals))

    def sort_key(i):
        flat = tuple(coef for v in rows[i] for coef in v.lifted(e))
        trivial = degrees[i] == 1 and all(mults[0] == 1 for mults in eigen_rows[i])
        return (degrees[i], not trivial, flat)

    order = sorted(range(len(rows)), key=sort_key)
    return CharacterTable(
        G,
        tuple(rows[i] for i in order),
        tuple(degrees[i] for i in order),
        tuple(tuple(tuple(m) for m in eigen_rows[i]) for i in order),
        prime,
    )


def _abelian_table(G: FiniteGroup) -> CharacterTable:
    factors = G.presentation[1]
    cl = G.classes
    e = G.exponent
    eigen_rows = []
    for n in G.labels:
        mults = []
        for c in range(len(cl)):
            x = G.labels[cl.representatives[c]]
            m = cl.orders[c]
            # chi_n(x) = zeta_e^(sum n_i x_i e / f_i); as a power of zeta_m
            expo = sum(ni * xi * (e // f) for ni, xi, f in zip(n, x, factors)) % e
            a = expo // (e // m)
            mult = [0] * m
            mult[a] = 1
            mults.append(mult)
        eigen_rows.append(mults)
    return _finish(G, eigen_rows, [1] * G.order, None)


def dixon_prime(order: int, exponent: int, start: int = 0) -> int:
    """Smallest prime p = 1 mod exponent with p > max(2 sqrt(order), start)."""
    p = exponent + 1
    while p * p <= 4 * order or p <= start or not _is_prime(p):
        p += exponent
    return p


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


def class_matrices(G: FiniteGroup) -> np.ndarray:
    """M[i, j, k] = #{x in C_i : x^-1 z_k in C_j}, the coefficient of K_k in K_i K_j."""
    cl = G.classes
    r = len(cl)
    class_of = np.array(cl.class_of)
    M = np.zeros((r, r, r), dtype=np.int64)
    xs = np.arange(G.order)
    inv = G.inv_table
    for k, z in enumerate(cl.representatives):
        y = G.table[inv[xs], z]
        np.add.at(M[:, :, k], (class_of[xs], class_of[y]), 1)
    return M


def _rref(A: np.ndarray, p: int):
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - A[others, c][:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : A v = 0} over F_p."""
    R, pivots = _rref(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


def _split(space: np.ndarray, M: np.ndarray, p: int) -> list[np.ndarray]:
    """Split an M-invariant subspace (rows) into eigenspaces of M (acting on columns)."""
    k = space.shape[0]
    V = space.T % p                       # r x k
    MV = (M @ V) % p
    # k independent coordinates of the column space of V
    _, rows_idx = _rref(V.T.copy(), p)
    inv = _inverse(V[rows_idx], p)
    X = (inv @ MV[rows_idx]) % p          # M V = V X
    pieces = []
    found = 0
    for lam in range(p):
        N = _nullspace((X - lam * np.eye(k, dtype=np.int64)) % p, p)
        if len(N):
            pieces.append(((V @ N.T) % p).T)
            found += len(N)
            if found == k:
                break
    if found != k:
        raise _SplitFailure()
    return pieces


def _inverse(A: np.ndarray, p: int) -> np.ndarray:
    k = A.shape[0]
    aug = np.concatenate([A % p, np.eye(k, dtype=np.int64)], axis=1)
    R, pivots = _rref(aug, p)
    if pivots[:k] != list(range(k)):
        raise _SplitFailure()
    return R[:, k:]


class _SplitFailure(Exception):
    pass


def _dixon_table(G: FiniteGroup) -> CharacterTable:
    e = G.exponent
    M = class_matrices(G)
    p = dixon_prime(G.order, e)
    for _attempt in range(50):
        try:
            return _dixon_attempt(G, M, p)
        except _SplitFailure:
            p = dixon_prime(G.order, e, start=p)
    raise InternalInconsistency(f"Dixon method failed for {G.name}")


def _dixon_attempt(G: FiniteGroup, M: np.ndarray, p: int) -> CharacterTable:
    cl = G.classes
    r = len(cl)
    e = G.exponent
    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(s.shape[0] == 1 for s in spaces):
            break
        nxt = []
        for s in spaces:
            if s.shape[0] == 1:
                nxt.append(s)
            else:
                nxt.extend(_split(s, M[i], p))
        spaces = nxt
    if len(spaces) != r or any(s.shape[0] != 1 for s in spaces):
        raise _SplitFailure()

    z = pow(_primitive_root(p), (p - 1) // e, p)
    sizes = cl.sizes
    eigen_rows, degrees = [], []
    for s in spaces:
        v = s[0] % p
        if v[0] == 0:
            raise _SplitFailure()
        v = (v * pow(int(v[0]), -1, p)) % p  # omega(K_0) = 1
        tot = sum(int(v[k]) * int(v[cl.inverse_class[k]]) * pow(sizes[k], -1, p) for k in range(r)) % p
        if tot == 0:
            raise _SplitFailure()
        target = G.order * pow(tot, -1, p) % p
        cands = [d for d in range(1, math.isqrt(G.order) + 1) if d * d % p == target and G.order % d == 0]
        if len(cands) != 1:
            raise _SplitFailure()
        d = cands[0]
        chi = [int(v[k]) * d * pow(sizes[k], -1, p) % p for k in range(r)]
        mults = []
        for c in range(r):
            m = cl.orders[c]
            zm = pow(z, e // m, p)
            vals = [chi[cl.power_map(c, j)] for j in range(m)]
            minv = pow(m, -1, p)
            mult = []
            for a in range(m):
                s_ = sum(val * pow(zm, (-a * j) % m, p) for j, val in enumerate(vals)) % p
                n = s_ * minv % p
                if n > d:
                    raise _SplitFailure()
                mult.append(n)
            if sum(mult) != d:
                raise _SplitFailure()
            mults.append(mult)
        eigen_rows.append(mults)
        degrees.append(d)
    if sum(d * d for d in degrees) != G.order:
        raise _SplitFailure()
    return _finish(G, eigen_rows, degrees, p)

