import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from prym.cyclotomic import Cyclotomic, cyclotomic_polynomial


def _phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@st.composite
def elements(draw, e=None):
    e = e or draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 10, 12]))
    coeffs = draw(st.dictionaries(st.integers(0, e - 1), st.integers(-4, 4), max_size=4))
    den = draw(st.integers(1, 3))
    return Cyclotomic.from_exponents(e, coeffs, den)


def approx(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_polynomial_degree_and_root(n):
    poly = cyclotomic_polynomial(n)
    assert len(poly) - 1 == _phi(n)
    z = cmath.exp(2j * cmath.pi / n)
    assert abs(sum(c * z**k for k, c in enumerate(poly))) < 1e-8


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sum_of_roots_of_unity_vanishes(p):
    total = sum((Cyclotomic.zeta(p, j) for j in range(p)), Cyclotomic.rational(0))
    assert total == 0
    assert total.is_rational()


def test_equality_across_conductors():
    assert Cyclotomic.zeta(6, 2) == Cyclotomic.zeta(3, 1)
    assert Cyclotomic.zeta(12, 6) == -1
    assert Cyclotomic.zeta(4, 1) + Cyclotomic.zeta(4, 3) == 0


def test_rational_values_drop_conductor():
    v = Cyclotomic.zeta(5, 1) * Cyclotomic.zeta(5, 4)
    assert v.is_rational() and v.e == 1 and v.to_fraction() == 1


def test_unhashable():
    with pytest.raises(TypeError):
        hash(Cyclotomic.zeta(3))


@given(elements(), elements(), elements())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(elements(), elements())
def test_complex_embedding_is_a_homomorphism(a, b):
    assert approx(a + b, complex(a) + complex(b))
    assert approx(a * b, complex(a) * complex(b))
    assert approx(a.conjugate(), complex(a).conjugate())


@settings(max_examples=60)
@given(elements(e=12), elements(e=12), st.sampled_from([1, 5, 7, 11]))
def test_galois_action_is_a_ring_automorphism(a, b, k):
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)


@given(st.integers(1, 30), st.integers(-40, 40))
def test_zeta_power(e, j):
    z = Cyclotomic.zeta(e, j)
    assert approx(z, cmath.exp(2j * cmath.pi * j / e))
    assert z.conjugate() == Cyclotomic.zeta(e, -j)


def test_rational_arithmetic_with_fractions():
    half = Cyclotomic.rational(Fraction(1, 2))
    assert half + Fraction(1, 2) == 1
    assert (Cyclotomic.zeta(3) * 2) / 2 == Cyclotomic.zeta(3)
    assert str(half) == "1/2"


@given(elements(), st.integers(2, 4))
def test_normal_form_independent_of_conductor(a, k):
    # the same value written at a multiple of its conductor
    coeffs = {j * k: c for j, c in enumerate(a.num)}
    b = Cyclotomic.from_exponents(a.e * k, coeffs, a.den)
    assert b == a
    assert (b.e, b.num, b.den) == (a.e, a.num, a.den)
    assert str(b) == str(a)
