from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quarticlines.algebra.fields import RationalField, FieldSpec, finite_field
from quarticlines.algebra.upoly import (UniPoly, discriminant, distinct_degree_factorization,
                                        equal_degree_factorization, gcd, interpolate, irreducible_factors,
                                        resultant, roots_with_multiplicity, squarefree_decomposition, xgcd)

F7 = finite_field(7)
F25 = finite_field(5, 2)
QQ = RationalField(FieldSpec.rationals())


def polys(F, max_deg=8):
    return st.lists(st.integers(0, F.order - 1), min_size=1, max_size=max_deg + 1).map(lambda c: UniPoly(F, c))


def nonzero(F, max_deg=8):
    return polys(F, max_deg).filter(lambda a: not a.is_zero())


def product(F, parts):
    acc = UniPoly(F, [F.one])
    for h, m in parts:
        acc = acc * h ** m
    return acc


@pytest.mark.parametrize("F", [F7, F25], ids=str)
def test_divmod_identity(F):
    @given(polys(F), nonzero(F, 5))
    def check(a, b):
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree
    check()


@pytest.mark.parametrize("F", [F7, F25], ids=str)
def test_gcd_and_bezout(F):
    @given(nonzero(F), nonzero(F))
    def check(a, b):
        g, s, t = xgcd(a, b)
        assert s * a + t * b == g
        assert (a % g).is_zero() and (b % g).is_zero()
        assert gcd(a, b) == g.monic()
    check()


@pytest.mark.parametrize("F", [F7, F25], ids=str)
def test_irreducible_factorization_reconstructs(F):
    @given(nonzero(F, 9).filter(lambda a: a.degree >= 1))
    def check(a):
        parts = irreducible_factors(a)
        assert product(F, parts).scale(a.lc) == a
        for h, _ in parts:
            assert h.lc == F.one
            assert distinct_degree_factorization(h) == [(h, h.degree)]
    check()


@pytest.mark.parametrize("F", [F7, F25], ids=str)
def test_squarefree_decomposition(F):
    @given(nonzero(F, 5).filter(lambda a: a.degree >= 1), nonzero(F, 3).filter(lambda a: a.degree >= 1))
    def check(a, b):
        f = a * b ** 2
        parts = squarefree_decomposition(f)
        assert product(F, parts).scale(f.lc) == f
        assert all(h.is_squarefree() for h, _ in parts)
    check()


def test_equal_degree_factorization_splits_quadratics():
    x = UniPoly(F7, [0, 1])
    # x^2 + 1 and x^2 + x + 3 are irreducible mod 7
    h1, h2 = x ** 2 + UniPoly(F7, [1]), x ** 2 + x + UniPoly(F7, [3])
    out = equal_degree_factorization(h1 * h2, 2)
    assert sorted(out, key=lambda u: u.coeffs) == sorted([h1, h2], key=lambda u: u.coeffs)


def test_roots_with_multiplicity_known():
    x = UniPoly(F7, [0, 1])
    f = (x - UniPoly(F7, [2])) ** 3 * (x - UniPoly(F7, [5])) * (x ** 2 + UniPoly(F7, [1]))
    assert roots_with_multiplicity(f) == [(2, 3), (5, 1)]


def test_rational_roots():
    f = UniPoly.from_values(QQ, [Fraction(-1, 2), Fraction(1), Fraction(0), Fraction(2)])  # 2x^3 + x - 1/2
    for r, _ in roots_with_multiplicity(f):
        assert f(r) == 0


def test_resultant_is_product_over_roots():
    a = UniPoly(F7, [6, 0, 1])  # (x-1)(x+1)
    b = UniPoly(F7, [3, 1])     # x + 3
    assert resultant(a, b) == F7.mul(b(1), b(6))
    assert resultant(a, a) == F7.zero


def test_discriminant_detects_repeated_root():
    assert discriminant(UniPoly(F7, [1, 2, 1])) == F7.zero
    assert discriminant(UniPoly(F7, [6, 0, 1])) != F7.zero


def test_interpolation():
    ys = [3, 1, 4, 1, 5]
    f = interpolate(F7, list(range(5)), ys)
    assert f.degree <= 4 and [f(i) for i in range(5)] == ys
