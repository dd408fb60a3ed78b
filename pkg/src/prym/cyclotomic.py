"""Exact arithmetic in cyclotomic fields Q(zeta_e).

An element is stored in the power basis ``1, z, ..., z^(phi(e)-1)`` modulo
the cyclotomic polynomial ``Phi_e``, as integer numerators over a common
positive denominator, at the smallest conductor whose field contains it.
That normal form is unique, so equality is coefficient equality and the
printed form does not depend on how a value was computed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def reduction_matrix(e: int) -> np.ndarray:
    """Row j holds the coefficients of x^j mod Phi_e, for 0 <= j < e."""
    phi = cyclotomic_polynomial(e)
    deg = len(phi) - 1
    rows = np.zeros((e, deg), dtype=object)
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for j in range(e):
        rows[j] = cur
        # multiply by x and reduce the overflow with the monic Phi_e
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return rows


def _reduce_full(e: int, full: Iterable[int]) -> list[int]:
    """Reduce a length-e coefficient vector in the basis z^0..z^(e-1)."""
    R = reduction_matrix(e)
    out = [0] * R.shape[1]
    for j, c in enumerate(full):
        if c:
            row = R[j]
            for k in range(len(out)):
                if row[k]:
                    out[k] += c * row[k]
    return out


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _descend_once(e: int, num: list[int], p: int):
    """Coefficients of the same value at conductor e/p, or None if it is not in that field."""
    m = e // p
    if m % p == 0:
        # Phi_e(x) = Phi_m(x^p): the subfield is the span of z^(p*i)
        if any(c for j, c in enumerate(num) if j % p):
            return None
        return num[::p]
    # e = p*m with p prime to m; z_e^j = z_m^a z_p^b.  An element of Q(z_m)
    # written as sum_b y_b z_p^b equals y_0 - y_1.
    ip, im = pow(p, -1, m) if m > 1 else 0, pow(m, -1, p)
    y0, y1 = [0] * m, [0] * m
    for j, c in enumerate(num):
        if c:
            a, b = (j * ip) % m, (j * im) % p
            if b == 0:
                y0[a] += c
            elif b == 1:
                y1[a] += c
    cand = _reduce_full(m, [u - v for u, v in zip(y0, y1)])
    back = [0] * e
    for i, c in enumerate(cand):
        back[(i * p) % e] += c
    if _reduce_full(e, back) != list(num):
        return None
    return cand


def _minimal_conductor(e: int, num: list[int]) -> tuple[int, list[int]]:
    changed = True
    while changed and e > 1:
        changed = False
        for p in _prime_factors(e):
            down = _descend_once(e, num, p)
            if down is not None:
                e, num = e // p, down
                changed = True
                break
    return e, num


class Cyclotomic:
    """An element of Q(zeta_e) in canonical power-basis form."""

    __slots__ = ("e", "num", "den")

    def __init__(self, e: int, num, den: int = 1):
        # num must already be reduced mod Phi_e (length phi(e))
        num = [int(c) for c in num]
        den = int(den)
        if den < 0:
            num, den = [-c for c in num], -den
        g = math.gcd(den, *num) if any(num) else den
        if g > 1:
            num = [c // g for c in num]
            den //= g
        if not any(num):
            e, num, den = 1, [0], 1
        elif e > 1 and not any(num[1:]):
            e, num = 1, [num[0]]
        elif e > 2:
            e, num = _minimal_conductor(e, num)
            g = math.gcd(den, *num)
            if g > 1:
                num = [c // g for c in num]
                den //= g
        self.e = e
        self.num = tuple(num)
        self.den = den

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        q = Fraction(q)
        return cls(1, [q.numerator], q.denominator)

    @classmethod
    def from_exponents(cls, e: int, coeffs: Mapping[int, int], den: int = 1) -> "Cyclotomic":
        """``sum_j coeffs[j] * zeta_e**j / den``."""
        full = [0] * e
        for j, c in coeffs.items():
            full[j % e] += c
        return cls(e, _reduce_full(e, full), den)

    @classmethod
    def zeta(cls, e: int, j: int = 1) -> "Cyclotomic":
        return cls.from_exponents(e, {j: 1})

    # -- helpers -----------------------------------------------------------

    def _full(self, L: int) -> list[int]:
        """Coefficients in the basis z_L^0..z_L^(L-1); self.e must divide L."""
        step = L // self.e
        full = [0] * L
        for j, c in enumerate(self.num):
            full[j * step] = c
        return full

    @staticmethod
    def _coerce(other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        L = math.lcm(self.e, other.e)
        a, b = self._full(L), other._full(L)
        full = [x * other.den + y * self.den for x, y in zip(a, b)]
        return Cyclotomic(L, _reduce_full(L, full), self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, [-c for c in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        L = math.lcm(self.e, other.e)
        sa, sb = L // self.e, L // other.e
        full = [0] * L
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(other.num):
                    if y:
                        full[(i * sa + j * sb) % L] += x * y
        return Cyclotomic(L, _reduce_full(L, full), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.e, [c * q.denominator for c in self.num], self.den * q.numerator)
        return NotImplemented

    def conjugate(self) -> "Cyclotomic":
        e = self.e
        full = [0] * e
        for j, c in enumerate(self.num):
            full[(-j) % e] += c
        return Cyclotomic(e, _reduce_full(e, full), self.den)

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_e -> zeta_e**k (k coprime to e)."""
        e = self.e
        full = [0] * e
        for j, c in enumerate(self.num):
            full[(j * k) % e] += c
        return Cyclotomic(e, _reduce_full(e, full), self.den)

    # -- comparisons and conversions -------------------------------------

    def is_rational(self) -> bool:
        return self.e == 1

    def to_fraction(self) -> Fraction:
        if self.e != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def lifted(self, L: int) -> tuple[Fraction, ...]:
        """Canonical coefficient tuple at conductor ``L`` (a multiple of e)."""
        full = self._full(L)
        return tuple(Fraction(c, self.den) for c in _reduce_full(L, full))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        if self.e == other.e:
            return self.num == other.num and self.den == other.den
        L = math.lcm(self.e, other.e)
        return self.lifted(L) == other.lifted(L)

    __hash__ = None

    def __complex__(self):
        z = complex(math.cos(2 * math.pi / self.e), math.sin(2 * math.pi / self.e))
        return sum(c * z ** j for j, c in enumerate(self.num)) / self.den

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            if j == 0:
                terms.append((q < 0, str(abs(q))))
                continue
            mono = f"z{self.e}^{j}"
            body = mono if abs(q) == 1 else f"{abs(q)}*{mono}"
            terms.append((q < 0, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out
