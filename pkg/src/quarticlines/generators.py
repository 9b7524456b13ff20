"""Random and constructed quartics used by tests, the verify suite and scripts."""
from __future__ import annotations

import itertools
import random

from .algebra.fields import Field
from .algebra.mpoly import MultiPoly
from .surface import VARS, QuarticSurface, smoothness_check


def _rand(F: Field, rng: random.Random, nonzero: bool = False):
    while True:
        c = rng.randrange(F.order)
        if c or not nonzero:
            return c  # raw codes: prime-field residues or extension-field codes


def monomials(degree: int, n: int = 4) -> list[tuple]:
    return [e for e in itertools.product(range(degree + 1), repeat=n) if sum(e) == degree]


def random_form(F: Field, degree: int, rng: random.Random, variables=VARS, density: float = 1.0) -> MultiPoly:
    terms = {}
    for e in monomials(degree, len(variables)):
        if rng.random() <= density:
            c = _rand(F, rng)
            if c != F.zero:
                terms[e] = c
    return MultiPoly(F, variables, terms)


def random_quartic(F: Field, rng: random.Random) -> QuarticSurface:
    return QuarticSurface(random_form(F, 4, rng), name="random")


def random_quartic_with_line(F: Field, rng: random.Random) -> QuarticSurface:
    """``x3 * A + x4 * B``: contains ``x3 = x4 = 0``."""
    x3, x4 = MultiPoly.var(F, VARS, "x3"), MultiPoly.var(F, VARS, "x4")
    return QuarticSurface(x3 * random_form(F, 3, rng) + x4 * random_form(F, 3, rng), name="random+line")


def random_quartic_with_lines(F: Field, rng: random.Random) -> QuarticSurface:
    """Two planes' worth of structure: ``l1 l2 A + l3 l4 B`` with linear ``li``
    and quadrics ``A, B`` contains the four lines ``li = lj = 0`` (i in 1,2; j in 3,4)."""
    ls = [random_form(F, 1, rng) for _ in range(4)]
    f = ls[0] * ls[1] * random_form(F, 2, rng) + ls[2] * ls[3] * random_form(F, 2, rng)
    if f.is_zero():
        return random_quartic_with_line(F, rng)
    return QuarticSurface(f, name="random+lines")


def diagonal_quartic(F: Field, rng: random.Random) -> QuarticSurface:
    x = [MultiPoly.var(F, VARS, v) for v in VARS]
    f = MultiPoly(F, VARS)
    for xi in x:
        f = f + (xi ** 4).scale(_rand(F, rng, nonzero=True))
    return QuarticSurface(f, name="diagonal")


def z_member(F: Field, q: tuple, g: tuple, name: str = "z-member") -> QuarticSurface:
    """``x3 x1^3 + x4 x2^3 + x1 x2 q(x3, x4) + g(x3, x4)``; ``q``, ``g`` list
    coefficients of ``x3^d, x3^(d-1) x4, ..., x4^d`` as raw field values."""
    x1, x2, x3, x4 = (MultiPoly.var(F, VARS, v) for v in VARS)
    qq = sum(((x3 ** (2 - i)) * (x4 ** i)).scale(c) for i, c in enumerate(q))
    gg = sum(((x3 ** (4 - i)) * (x4 ** i)).scale(c) for i, c in enumerate(g))
    return QuarticSurface(x3 * x1 ** 3 + x4 * x2 ** 3 + x1 * x2 * qq + gg, name=name)


def random_z_member(F: Field, rng: random.Random, x3_divides_g: bool = False, x4_divides_g: bool = False,
                    x3_divides_q: bool = False, smooth: bool = True, tries: int = 200) -> QuarticSurface:
    """Random member of the normal-form family with prescribed divisibilities,
    rejecting singular surfaces when ``smooth``."""
    for _ in range(tries):
        q = [_rand(F, rng, nonzero=True) for _ in range(3)]
        g = [_rand(F, rng, nonzero=True) for _ in range(5)]
        if x3_divides_q:
            q[2] = F.zero
        if x3_divides_g:
            g[4] = F.zero
        if x4_divides_g:
            g[0] = F.zero
        S = z_member(F, tuple(q), tuple(g))
        if not smooth or smoothness_check(S).status == "smooth":
            return S
    raise RuntimeError("no smooth member found")


def quartic_with_planar_fiber(F: Field, rng: random.Random, lam0, star: bool = False,
                              tries: int = 200) -> QuarticSurface:
    """``(x4 - lam0 x3) K + x3 L1 L2 L3``: the plane ``x4 = lam0 x3`` through
    ``x3 = x4 = 0`` cuts three lines, concurrent when ``star``."""
    x1, x2, x3, x4 = (MultiPoly.var(F, VARS, v) for v in VARS)
    for _ in range(tries):
        K = random_form(F, 3, rng)
        Ls = [random_form(F, 1, rng, ) for _ in range(3)]
        if star:
            # three forms vanishing at a common point: take L3 = a L1 + b L2
            Ls[2] = Ls[0].scale(_rand(F, rng, True)) + Ls[1].scale(_rand(F, rng, True))
        f = (x4 - x3.scale(lam0)) * K + x3 * Ls[0] * Ls[1] * Ls[2]
        if f.is_zero():
            continue
        S = QuarticSurface(f, name="planar-fiber")
        if smoothness_check(S).status == "smooth":
            return S
    raise RuntimeError("no smooth quartic found")
