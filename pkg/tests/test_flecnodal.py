import random

import pytest
from hypothesis import given, settings, strategies as st

from quarticlines.algebra.fields import finite_field
from quarticlines.algebra.mpoly import BinaryForm
from quarticlines.census import enumerate_elimination, incidence_graph
from quarticlines.flecnodal import (DEGREE_BOUND, FlecnodalError, ParametrizedConic, binary_resultant,
                                    conic_nonmembership, flecnodal_degree_on_conic, flecnodal_member,
                                    line_budget_audit, sample_points_on_line, tangent_basis, tangent_forms)
from quarticlines.fibration import map_poly
from quarticlines.generators import random_quartic_with_line, random_z_member
from quarticlines.surface import projective_points


def contact_four_direction(S, P, G):
    """Brute force: a tangent direction over ``G`` with contact order >= 4."""
    F = S.field
    u, w = tangent_basis(S, P)
    A, B = tangent_forms(S, P, (u, w))
    # push the forms into G and try every direction of P^1(G)
    lift = lambda bf: BinaryForm(G, bf.degree, list(bf.coeffs), bf.vars)
    A, B = lift(A), lift(B)
    dirs = [(G.one, c) for c in range(G.order)] + [(G.zero, G.one)]
    return any(A(*d) == G.zero and B(*d) == G.zero for d in dirs)


def test_membership_matches_brute_force():
    F = finite_field(7)
    G = finite_field(7, 2)  # the common root of A and B has degree <= 2 over F
    S = random_quartic_with_line(F, random.Random(4))
    pts = [P for P in projective_points(F) if S(P) == 0 and any(S.gradient(P))]
    assert len(pts) > 30
    for P in pts:
        assert flecnodal_member(S, P).member == contact_four_direction(S, P, G)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_points_of_lines_are_flecnodal(seed):
    F = finite_field(13)
    S = random_quartic_with_line(F, random.Random(seed))
    for L in enumerate_elimination(S).lines:
        for P in sample_points_on_line(L, 3, seed):
            if any(S.gradient(P)):
                assert flecnodal_member(S, P).member


def test_resultant_of_zero_form():
    F = finite_field(13)
    A = BinaryForm(F, 2, [0, 0, 0], ("a", "b"))
    B = BinaryForm(F, 3, [1, 2, 3, 4], ("a", "b"))
    assert binary_resultant(A, B) == 0


def test_errors():
    F = finite_field(13)
    S = random_quartic_with_line(F, random.Random(1))
    off = next(P for P in projective_points(F) if S(P) != 0)
    with pytest.raises(FlecnodalError):
        flecnodal_member(S, off)


def _family_conic():
    # in the plane x4 = 0 a member with x4 | g cuts x3 x1^3 + x1 x2 q0 x3^2 = x3 x1 (x1^2 + q0 x2 x3)
    F = finite_field(43)
    S = random_z_member(F, random.Random(2032), x4_divides_g=True)
    q0 = S.f.terms[(1, 1, 2, 0)]
    B = lambda a, b, c: BinaryForm(F, 2, [a, b, c], ("s", "u"))
    return S, ParametrizedConic(F, (B(0, 1, 0), B(1, 0, 0), B(0, 0, F.neg(F.inv(q0))), B(0, 0, 0)))


def test_family_conic_not_flecnodal():
    S, C = _family_conic()
    assert C.lies_on(S) and not C.is_degenerate()
    assert conic_nonmembership(S, C)


@pytest.mark.parametrize("chart", [(1, 2, 3), (0, 2, 3), (0, 1, 3), (3, 2, 0)])
def test_flecnodal_divisor_has_degree_20(chart):
    S, C = _family_conic()
    chk = flecnodal_degree_on_conic(S, C, chart)
    assert chk.chart_factor_degree == 48
    assert chk.residual_degree == 2 * DEGREE_BOUND
    assert chk.divisor_degree == 20


def test_degenerate_chart_is_refused():
    S, C = _family_conic()
    with pytest.raises(FlecnodalError, match="chart degenerates"):
        flecnodal_degree_on_conic(S, C, (2, 1, 0))  # x4 vanishes on the conic


def test_budget_audit_on_example(surfaces):
    S = surfaces["example60"]
    res = enumerate_elimination(S)
    rep = line_budget_audit(res, incidence_graph(res), S, flecnodal_samples=2)
    assert rep.passed and rep.lines == 60 and rep.max_degree == 20
