import random

from quarticlines.algebra.fields import finite_field
from quarticlines.cli import EXIT_FINDING, main
from quarticlines.generators import quartic_with_planar_fiber, random_z_member
from quarticlines.surface import line_in_surface, ProjLine, smoothness_check
from quarticlines.verify import VerifyConfig, criterion_schur, run_all

CORRUPTED = "field F 13\nx1^4 - x1*x2^3 + 2*x1*x2*x3*x4 = x3^4 - x3*x4^3 + x2^4\n"


def test_negative_control_corrupted_schur(tmp_path, capsys):
    p = tmp_path / "bad.quartic"
    p.write_text(CORRUPTED)
    res = criterion_schur(VerifyConfig(schur_path=str(p)))
    assert not res.passed and "count 1 " in res.detail
    assert main(["verify", "--only", "2", "--schur-file", str(p)]) == EXIT_FINDING
    assert "[FAIL]  2." in capsys.readouterr().out


def test_run_all_reports_each_selected_check():
    lines = []
    out = run_all(VerifyConfig(), only=[3, 9], echo=lines.append)
    assert [r.number for r in out] == [3, 9] and len(lines) == 2


def test_generators_respect_their_contracts():
    rng = random.Random(0)
    F = finite_field(13)
    L = ProjLine.from_equations(F, [[0, 0, 1, 0], [0, 0, 0, 1]])
    S = random_z_member(finite_field(31), rng, x3_divides_g=True)
    assert S.f.terms.get((0, 0, 0, 4), 0) == 0 and smoothness_check(S).status == "smooth"
    T = quartic_with_planar_fiber(F, rng, 5, star=True)
    assert line_in_surface(T, L)
