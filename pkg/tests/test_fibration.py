import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from quarticlines.algebra.fields import FieldSpec, finite_field
from quarticlines.census import enumerate_elimination
from quarticlines.fibration import (G_R, NotInFamilyZ, analyze_line, euler_audit, line_kind, ramification_profile,
                                    segre_resultant, z_normal_form)
from quarticlines.generators import random_quartic_with_line, random_z_member, z_member
from quarticlines.parse import parse_surface
from quarticlines.planecubic import I1, I2, I3, IV
from quarticlines.surface import ProjLine, lines_meet, normalize_line, smoothness_check

F31 = finite_field(31)


def std_line(F):
    return ProjLine.from_equations(F, [[0, 0, 1, 0], [0, 0, 0, 1]])


def test_bundled_member(surfaces):
    rep = analyze_line(surfaces["z_member"], std_line(F31))
    assert rep.kind.kind == "SECOND" and rep.ramification.R == "2^2"
    assert rep.type_counts() == {"I1": 6, "I3": 6}
    assert rep.N == 18 and rep.euler_total == 24
    assert all(rep.checks.values())


def test_member_with_two_i2_fibres(surfaces):
    rep = analyze_line(surfaces["z_member_i2"], std_line(F31))
    assert rep.type_counts() == {"I1": 2, "I2": 2, "I3": 6}
    assert rep.N == 20 and rep.N in G_R["2^2"]
    assert all(rep.checks.values())


def test_single_divisibility_gives_19():
    S = random_z_member(F31, random.Random(11), x4_divides_g=True)
    rep = analyze_line(S, std_line(F31))
    assert rep.N == 19 and rep.type_counts()["I2"] == 1
    i2 = next(f for f in rep.fibers if f.kind == I2)
    assert i2.t == (F31.one, F31.zero)  # the plane x4 = 0


def test_diagonal_quartic_line():
    # x1 = a x2, x3 = b x4 with a^4 = b^4 = -1: two star planes, eight line+conic planes
    F = finite_field(17)
    S = parse_surface("x^4 + y^4 + z^4 + w^4", FieldSpec.prime(17))
    a = next(c for c in range(17) if pow(c, 4, 17) == 16)
    L = ProjLine.from_equations(F, [[1, F.neg(a), 0, 0], [0, 0, 1, F.neg(a)]])
    rep = analyze_line(S, L)
    assert rep.type_counts() == {"I2": 8, "IV": 2}
    assert rep.N == 14 and rep.euler_total == 24
    assert rep.kind.kind == "FIRST" and rep.kind.degree <= 18


@pytest.mark.parametrize("name", ["schur", "example60"])
def test_fibre_lines_match_census(surfaces, name):
    S = surfaces[name]
    lines = enumerate_elimination(S).lines
    for L in lines[:6]:
        rep = analyze_line(S, L)
        from_fibres = {M.pluecker for f in rep.fibers for M in f.lines if M != L}
        meeting = {M.pluecker for M in lines if M != L and lines_meet(L, M)[0] == "point"}
        assert from_fibres == meeting
        assert rep.N == len(meeting)  # every line is rational here
        assert rep.euler_total == 24 and all(rep.checks.values())


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_random_line_invariants(seed):
    F = finite_field(13)
    S = random_quartic_with_line(F, random.Random(seed))
    assume(smoothness_check(S).status == "smooth")
    L = std_line(F)
    rep = analyze_line(S, L)
    assert sum(f.euler * f.conjugates for f in rep.fibers) == 24  # orders of the discriminant
    assert rep.ramification.rh_sum == 4
    assume(euler_audit(rep).passed)  # singular points off F_13 break the fibre count
    if rep.kind.kind == "FIRST":
        assert rep.kind.degree <= 18 and rep.N <= 18
    else:
        assert rep.N <= 20 and rep.N in G_R[rep.ramification.R]


def test_euler_audit_detects_hidden_singularity():
    # smooth at every F_31-point, singular at three conjugate points over F_31^3
    S = z_member(F31, (7, 24, 0), (30, 9, 29, 13, 26))
    assert smoothness_check(S).status == "smooth"
    rep = analyze_line(S, std_line(F31))
    assert not euler_audit(rep).passed
    bad = [f for f in rep.fibers if f.euler_mismatch]
    assert [(f.t_label(), f.kind, f.euler, f.milnor) for f in bad] == [("12", I3, 6, 3)]


def test_hessian_corner_matches_ramification(surfaces):
    # r == 0 exactly on the lines whose degree-3 map to P^1 has two double branch points
    literal_misses = 0
    for name in ("schur", "example60"):
        S = surfaces[name]
        for L in enumerate_elimination(S).lines:
            Sn, _ = normalize_line(S, L)
            second = segre_resultant(Sn, 2).is_zero()
            assert second == (ramification_profile(S, L).R == "2^2")
            if second and not segre_resultant(Sn, 1).is_zero():
                literal_misses += 1
    # the coefficient itself in the corner (instead of the second derivative) loses most of them
    assert literal_misses == 15 + 9


def test_z_normal_form_recovers_member(surfaces):
    S = surfaces["z_member"]
    rng = random.Random(3)
    from quarticlines.algebra.linalg import determinant
    while True:
        M = [[rng.randrange(31) for _ in range(4)] for _ in range(4)]
        M[2][0] = M[2][1] = M[3][0] = M[3][1] = 0  # keeps x3 = x4 = 0
        if determinant(M, F31):
            break
    T = S.transformed(M)
    zn = z_normal_form(T, std_line(F31))
    rebuilt = z_member(F31, zn.q.coeffs, zn.g.coeffs)
    assert T.transformed(zn.transform).f.scale(F31.inv(zn.scale)) == rebuilt.f


def test_z_normal_form_rejects_first_kind():
    S = parse_surface("x^4 + y^4 + z^4 + w^4", FieldSpec.prime(17))
    F = S.field
    L = ProjLine.from_equations(F, [[1, F.neg(2), 0, 0], [0, 0, 1, F.neg(2)]])  # 2^4 = -1 mod 17
    assert ramification_profile(S, L).R == "2^2" and line_kind(S, L).kind == "FIRST"
    with pytest.raises(NotInFamilyZ):
        z_normal_form(S, L)
