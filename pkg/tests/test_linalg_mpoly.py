import itertools

from hypothesis import given, strategies as st

from quarticlines.algebra.fields import finite_field
from quarticlines.algebra.linalg import bareiss_determinant, determinant, inverse, kernel, matmul, rank
from quarticlines.algebra.mpoly import (BinaryForm, MultiPoly, binary_discriminant, hessian_determinant,
                                        resultant_in)
from quarticlines.algebra.upoly import UniPoly, discriminant, resultant

F = finite_field(11)
V = ("x", "y", "z")
x, y, z = (MultiPoly.var(F, V, v) for v in V)


def matrices(n):
    return st.lists(st.lists(st.integers(0, 10), min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz(M):
    n = len(M)
    acc = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term *= M[i][perm[i]]
        acc += term
    return acc % 11


@given(matrices(4))
def test_determinant_matches_leibniz(M):
    assert determinant(M, F) == leibniz(M)


@given(matrices(3))
def test_bareiss_over_constants(M):
    P = [[UniPoly(F, [c]) for c in row] for row in M]
    d = bareiss_determinant(P)
    assert (d.coeff(0) if not d.is_zero() else 0) == leibniz(M)


@given(matrices(4))
def test_rank_nullity_and_inverse(M):
    K = kernel(M, F)
    assert rank(M, F) + len(K) == 4
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) % 11 == 0 for row in M)
    if determinant(M, F):
        I = matmul(M, inverse(M, F), F)
        assert I == [[int(i == j) for j in range(4)] for i in range(4)]


def test_derivative_and_exquo():
    f = x ** 3 * y + x * z ** 3
    assert f.derivative("x") == (x ** 2 * y).scale(3) + z ** 3
    assert (f * (x + y)).exquo(x + y) == f


def test_compose_and_subs():
    f = x ** 2 + y * z
    g = f.compose([y, x, z])
    assert g == y ** 2 + x * z
    assert f.subs({"x": 2}).evaluate((0, 3, 5)) == (4 + 15) % 11


def test_resultant_in_matches_univariate():
    a, b = x ** 2 - y, x - z  # eliminating x: y - z^2 up to sign
    r = resultant_in(a, b, "x")
    assert r == y - z ** 2 or r == z ** 2 - y
    ua, ub = UniPoly(F, [F.neg(4), 0, 1]), UniPoly(F, [F.neg(3), 1])
    assert resultant(ua, ub) == r.evaluate((0, 4, 3)) or F.neg(resultant(ua, ub)) == r.evaluate((0, 4, 3))


@given(st.lists(st.integers(0, 10), min_size=5, max_size=5).filter(lambda c: c[0]))
def test_binary_discriminant_matches_univariate(c):
    assert binary_discriminant(c, F) == discriminant(UniPoly(F, list(reversed(c))))


def test_binary_form_roots_at_infinity():
    f = BinaryForm(F, 3, [0, 1, 0, 0])  # x^2 y: roots (0:1) twice, (1:0) once
    roots = dict(f.roots())
    assert roots[(F.zero, F.one)] == 2 and roots[(F.one, F.zero)] == 1


def test_hessian_of_xyz():
    assert hessian_determinant(x * y * z, V) == (x * y * z).scale(2)
