from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quarticlines.algebra.fields import FieldSpec, finite_field
from quarticlines.algebra.mpoly import MultiPoly
from quarticlines.data import example_path, examples
from quarticlines.parse import ParseError, load_surface, parse_surface, read_source
from quarticlines.surface import (VARS, PencilPlane, ProjLine, QuarticSurface, SurfaceError, line_in_surface,
                                  lines_meet, normalize_line, residual_cubic, smoothness_check)

F13 = finite_field(13)


def std_line(F):
    return ProjLine.from_equations(F, [[0, 0, 1, 0], [0, 0, 0, 1]])


def test_schur_text_forms_agree():
    a = parse_surface("x1^4 - x1*x2^3 - x3^4 + x3*x4^3", FieldSpec.prime(13))
    b = parse_surface("x^4 - x y^3 = z^4 - z w^3", FieldSpec.prime(13))
    c = load_surface(example_path("schur"))
    assert a.f == b.f == c.f


def test_example_with_parameter():
    text = "x1^3*x3 + x1*x2*x3^2 + x2^3*x4 + r*x3^3*x4 - x1*x2*x4^2 - r*x3*x4^3"
    S = parse_surface(text, None, {"r": Fraction(-16, 27)})
    assert S.field.spec.kind == "Q"
    assert S.f.terms[(0, 0, 3, 1)] == Fraction(-16, 27)
    T = load_surface(example_path("example60"))
    assert T.spec == FieldSpec.prime(19)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError, match="degree 3"):
        parse_surface("x1^3")
    with pytest.raises(ParseError, match="homogeneous"):
        parse_surface("x1^4 + x2")
    with pytest.raises(ParseError) as exc:
        parse_surface("x1^4 + $x2^4")
    assert exc.value.pos == 7
    with pytest.raises(ParseError, match="unknown symbol"):
        parse_surface("x1^4 + q*x2^4")
    with pytest.raises(ParseError, match="characteristic clash"):
        parse_surface("x1^4/13 + x2^4", FieldSpec.prime(13))


def test_read_source_directives():
    src = read_source("# c\nfield F 3 2\nparam a = 1/2\nx^4 +\n a*y^4\n")
    assert src.field.p == 3 and src.params == {"a": Fraction(1, 2)} and src.expression_line == 4


def test_bundled_examples_present():
    assert {"schur", "fermat", "example60", "z_member", "z_member_i2"} <= set(examples())


def test_line_membership_and_frame():
    S = load_surface(example_path("z_member"))
    L = std_line(S.field)
    assert line_in_surface(S, L)
    Sn, M = normalize_line(S, L)
    assert line_in_surface(Sn, std_line(S.field))
    with pytest.raises(SurfaceError):
        normalize_line(S, ProjLine.from_equations(S.field, [[1, 0, 0, 0], [0, 1, 0, 0]]))


def test_residual_cubic_times_plane():
    S = load_surface(example_path("z_member"))
    L = std_line(S.field)
    C = residual_cubic(S, L, (S.field.one, S.field.from_int(2)))
    assert C.total_degree() == 3


@given(st.lists(st.integers(0, 12), min_size=4, max_size=4), st.lists(st.integers(0, 12), min_size=4, max_size=4))
def test_pluecker_relation_and_meeting(P, Q):
    try:
        L = ProjLine.through(F13, P, Q)
    except SurfaceError:
        return
    p = L.pluecker
    assert (p[0] * p[5] - p[1] * p[4] + p[2] * p[3]) % 13 == 0
    assert L.contains_point(P) and L.contains_point(Q)
    assert lines_meet(L, L)[0] != "point"


def test_smoothness():
    assert smoothness_check(load_surface(example_path("schur"))).status == "smooth"
    x1, x2, x3, x4 = (MultiPoly.var(F13, VARS, v) for v in VARS)
    cone = QuarticSurface(x1 ** 4 + x2 ** 4 + x3 ** 4)  # singular at (0:0:0:1)
    rep = smoothness_check(cone)
    assert rep.status == "singular" and rep.witness == (0, 0, 0, 1)
    assert smoothness_check(parse_surface("x^4+y^4+z^4+w^4")).status == "unverified"
