import random

import pytest
from hypothesis import given, strategies as st

from quarticlines.algebra.fields import finite_field
from quarticlines.algebra.linalg import determinant
from quarticlines.algebra.mpoly import MultiPoly
from quarticlines.planecubic import (I0_STAR, I1, I2, I3, II, III, III_STAR, IV, IV_STAR, SMOOTH, Kodaira,
                                     base_change_type, classify_plane_cubic, flex_support)

F = finite_field(13)
V = ("x", "y", "z")
x, y, z = (MultiPoly.var(F, V, v) for v in V)

CUBICS = {
    "I0": x ** 3 + y ** 3 + z ** 3,
    "I1": y ** 2 * z - x ** 3 - x ** 2 * z,
    "II": y ** 2 * z - x ** 3,
    "I2": z * (x * y - z ** 2),
    "III": y * (y * z - x ** 2),
    "I3": x * y * z,
    "IV": x * y * (x + y),
}
MILNOR = {"I0": 0, "I1": 1, "II": 2, "I2": 2, "III": 3, "I3": 3, "IV": 4}
LINES = {"I0": 0, "I1": 0, "II": 0, "I2": 1, "III": 1, "I3": 3, "IV": 3}


@pytest.mark.parametrize("label", sorted(CUBICS))
def test_normal_forms(label):
    out = classify_plane_cubic(CUBICS[label], V)
    assert out.kind.label == label
    assert out.milnor == MILNOR[label]
    assert len(out.lines) == LINES[label] == out.line_count
    assert not out.euler_mismatch


def test_non_reduced_is_pathological():
    assert classify_plane_cubic(x ** 2 * y, V).kind.name == "PATH"


def test_euler_mismatch_is_recorded():
    assert classify_plane_cubic(CUBICS["I3"], V, euler=2).euler_mismatch


def _invertible(draw_vals):
    M = [draw_vals[0:3], draw_vals[3:6], draw_vals[6:9]]
    return M if determinant(M, F) else None


@given(st.sampled_from(sorted(CUBICS)), st.lists(st.integers(0, 12), min_size=9, max_size=9))
def test_type_is_projectively_invariant(label, vals):
    M = _invertible(vals)
    if M is None:
        return
    imgs = [sum((g.scale(M[i][j]) for j, g in enumerate((x, y, z))), MultiPoly(F, V)) for i in range(3)]
    C = CUBICS[label].compose(imgs)
    assert classify_plane_cubic(C, V).kind.label == label


def test_kodaira_invariants():
    assert [k.euler for k in (SMOOTH, I1, I2, I3, II, III, IV)] == [0, 1, 2, 3, 2, 3, 4]
    assert Kodaira.parse("I_3") == I3 and Kodaira.parse("IV*") == IV_STAR
    assert I2.is_semistable and not IV.is_semistable


def test_base_change():
    assert base_change_type(I1, 3) == I3
    assert base_change_type(II, 2) == IV and base_change_type(II, 3) == I0_STAR
    assert base_change_type(III, 2) == I0_STAR and base_change_type(III, 3) == III_STAR
    assert base_change_type(IV, 2) == IV_STAR and base_change_type(IV, 3) == SMOOTH
    with pytest.raises(ValueError):
        base_change_type(IV, 4)


def test_flex_support():
    assert flex_support(IV).singular == "triple point" and flex_support(IV).smooth_points == 1
    assert flex_support(I3).singular is None and flex_support(I3).smooth_points == 3
