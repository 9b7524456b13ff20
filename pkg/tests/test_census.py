import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from quarticlines.algebra.fields import FieldSpec, finite_field
from quarticlines.census import (BudgetViolation, char0_count, definition_degree, enumerate_bruteforce,
                                 enumerate_elimination, grassmannian_size, incidence_graph, sigma_orbits,
                                 stabilized_count, tower_degrees)
from quarticlines.data import example_path
from quarticlines.generators import diagonal_quartic, random_quartic_with_line, random_quartic_with_lines
from quarticlines.parse import load_surface, parse_surface
from quarticlines.surface import line_in_surface

FERMAT = "x^4 + y^4 + z^4 + w^4"


def test_grassmannian_size():
    # lines of P^3(F_q): (q^2+1)(q^2+q+1)
    assert grassmannian_size(5) == 26 * 31


@settings(max_examples=12)
@given(st.integers(0, 10 ** 6), st.sampled_from([5, 7]))
def test_elimination_matches_bruteforce(seed, p):
    F = finite_field(p)
    rng = random.Random(seed)
    S = rng.choice([random_quartic_with_line, random_quartic_with_lines, diagonal_quartic])(F, rng)
    assert enumerate_elimination(S).keys() == enumerate_bruteforce(S).keys()


def test_diagonal_quartic_48_lines_degree_14():
    # all 48 lines of the Fermat quartic are rational once 8 | p - 1
    S = parse_surface(FERMAT, FieldSpec.prime(17))
    res = enumerate_elimination(S)
    assert res.count == 48
    assert all(line_in_surface(S, L) for L in res.lines)
    G = incidence_graph(res)
    assert set(G.degrees) == {14}
    # two planes x_i = a x_j through each line hold four concurrent lines
    assert all(len(G.triples(i)) == 2 for i in range(48))
    assert {g.shape for g in G.triples()} == {"star"}


def test_tower_stabilizes():
    S = parse_surface(FERMAT, FieldSpec.prime(5))
    res = stabilized_count(S, K=3)
    assert res.count_per_level == [0, 48, 48] and res.level_degrees == [1, 2, 4] and res.stabilized
    assert Counter(res.def_degree) == {2: 48}
    assert tower_degrees(1, 3) == [1, 2, 4]


def test_char3_exempt_from_budget():
    res = stabilized_count(load_surface(example_path("fermat")), K=2)
    assert res.count == 112
    assert Counter(res.def_degree) == {1: 8, 2: 104}


def test_budget_violation_is_raised(monkeypatch):
    import quarticlines.census as census
    monkeypatch.setattr(census, "LINE_BUDGET", 40)
    with pytest.raises(BudgetViolation):
        stabilized_count(parse_surface(FERMAT, FieldSpec.prime(17)), K=1)


def test_char0_count_agrees_across_primes():
    out = char0_count(parse_surface(FERMAT), [17, 41, 73], K=2)
    assert out.agree and out.count == 48


def test_definition_degree():
    res = enumerate_elimination(parse_surface(FERMAT, FieldSpec.extension(5, 2)))
    assert {definition_degree(L) for L in res.lines} == {2}


def test_sigma_orbits_on_example(surfaces):
    S = surfaces["example60"]
    res = enumerate_elimination(S)
    sizes = Counter(len(o) for o in sigma_orbits(S, res))
    assert sum(k * v for k, v in sizes.items()) == 60
    assert set(sizes) <= {1, 3}
