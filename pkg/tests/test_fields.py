from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quarticlines.algebra.fields import (ExtensionField, FieldError, FieldSpec, PolyExtensionField, PrimeField,
                                         finite_field, find_irreducible, is_irreducible_mod_p, is_prime)

FIELDS = [finite_field(5), finite_field(13), finite_field(5, 2), finite_field(7, 3), finite_field(3, 2)]


def elements(F):
    return st.integers(0, F.order - 1)


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_field_axioms(F):
    @given(elements(F), elements(F), elements(F))
    def check(a, b, c):
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == F.zero
        assert F.sub(F.add(a, b), b) == a
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one
            assert F.div(F.mul(a, b), a) == b
    check()


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_multiplicative_group_order(F):
    assert all(F.pow(a, F.order - 1) == F.one for a in range(1, F.order))


def test_frobenius_fixes_subfield():
    F = finite_field(5, 4)
    sub = [a for a in range(F.order) if F.in_subfield(a, 2)]
    assert len(sub) == 25
    assert all(F.frobenius(a, 2) == a for a in sub)


def test_poly_field_matches_table_field():
    spec = FieldSpec.extension(31, 3)
    T, P = ExtensionField(spec), PolyExtensionField(spec)
    import random
    rng = random.Random(5)
    for _ in range(300):
        a, b = rng.randrange(T.order), rng.randrange(1, T.order)
        assert T.mul(a, b) == P.mul(a, b)
        assert T.div(a, b) == P.div(a, b)
        assert T.pow(b, 77) == P.pow(b, 77)


def test_large_extension_is_table_free():
    assert isinstance(finite_field(13, 6), PolyExtensionField)
    assert isinstance(finite_field(13, 2), ExtensionField)
    assert isinstance(finite_field(13), PrimeField)


def test_irreducible_search():
    for p, k in [(5, 2), (7, 3), (13, 4)]:
        m = find_irreducible(p, k)
        assert len(m) == k + 1 and is_irreducible_mod_p(m, p)
    assert not is_irreducible_mod_p((1, 0, 1), 5)  # x^2 + 1 = (x-2)(x+2) mod 5


def test_rejected_fields():
    for bad in [lambda: FieldSpec.prime(2), lambda: FieldSpec.prime(3), lambda: FieldSpec.prime(15),
                lambda: FieldSpec.extension(5, 2, (1, 0, 1))]:
        with pytest.raises(FieldError):
            bad()


def test_rational_conversion_mod_p():
    F = finite_field(19)
    assert F.mul(F.convert(Fraction(-16, 27)), 27) == F.convert(-16)
    with pytest.raises((FieldError, ZeroDivisionError)):
        F.convert(Fraction(1, 19))


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
