import json

import pytest

from quarticlines.cli import EXIT_FINDING, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_fermat_char3(capsys):
    code, out, _ = run(capsys, "census", "--field", "F", "3", "2", "fermat", "--format", "json", "--tower", "2")
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 112


def test_fibration_on_member(capsys):
    code, out, _ = run(capsys, "fibration", "--line", "x3=x4=0", "z_member", "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert (rep["kind"], rep["R"], rep["N"], rep["euler"]) == ("SECOND", "2^2", 18, 24)


def test_graph_schur(capsys):
    code, out, _ = run(capsys, "graph", "schur", "--field", "F", "13", "--tower", "1", "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert set(rep["graph"]["degrees"]) == {18} and rep["budget"]["passed"]


def test_classify_line_text(capsys):
    code, out, _ = run(capsys, "classify-line", "z_member_i2", "--line", "x3, x4")
    assert code == EXIT_OK and "SECOND" in out and "2^2" in out


def test_inline_surface_and_param(capsys):
    poly = "x1^3*x3 + x1*x2*x3^2 + x2^3*x4 + r*x3^3*x4 - x1*x2*x4^2 - r*x3*x4^3"
    code, out, _ = run(capsys, "census", poly, "--param", "r=-16/27", "--field", "F", "19", "--tower", "1",
                       "--format", "json")
    assert code == EXIT_OK and json.loads(out)["count"] == 60


def test_flecnodal_point(capsys):
    code, out, _ = run(capsys, "flecnodal", "z_member", "--point", "1:0:0:0")
    assert code == EXIT_OK and "flecnodal" in out


def test_usage_errors(capsys):
    assert run(capsys, "census", "x1^3", "--field", "F", "13")[0] == EXIT_USAGE
    assert run(capsys, "census", "schur", "--field", "F", "4")[0] == EXIT_USAGE
    assert run(capsys, "fibration", "schur", "--field", "Q", "--line", "x1=x3, x2=x4")[0] == EXIT_USAGE
    code, _, err = run(capsys, "fibration", "z_member", "--line", "x1=x2=0")
    assert code == EXIT_USAGE and "not contained" in err
    assert run(capsys, "census", "no/such/file.quartic")[0] == EXIT_USAGE


def test_budget_violation_exit_code(capsys, monkeypatch):
    import quarticlines.census as census
    monkeypatch.setattr(census, "LINE_BUDGET", 50)
    assert run(capsys, "census", "schur", "--field", "F", "13", "--tower", "1")[0] == EXIT_FINDING


def test_reports_are_deterministic(capsys):
    args = ("graph", "example60", "--tower", "1", "--format", "json", "--seed", "7")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "census", "schur", "--field", "F", "13", "--tower", "1", "--format", "json")
    rep = json.loads(out)
    assert rep["count"] == len(rep["lines"]) == 64
    assert json.loads(json.dumps(rep)) == rep


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "9,10")
    assert code == EXIT_OK and out.count("[PASS]") == 2
