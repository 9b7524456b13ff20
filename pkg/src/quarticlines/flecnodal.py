"""Points of a quartic admitting a line with contact order at least four.

At a smooth point ``P`` write ``f(P + t v) = t^2 A(v) + t^3 B(v) + t^4 C(v)``
for ``v`` in the tangent plane.  ``P`` is flecnodal iff the binary forms
``A`` (quadratic) and ``B`` (cubic) share a root, i.e. ``Res(A, B) = 0``.
These points form a divisor in ``|O_S(20)|`` that contains every line of S.
"""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Sequence

from .algebra.fields import Field, FieldError
from .algebra.linalg import bareiss_determinant, kernel, rank
from .algebra.mpoly import BinaryForm, MultiPoly
from .algebra.upoly import UniPoly, resultant
from .census import LINE_BUDGET, CensusResult, IncidenceGraph
from .surface import VARS, ProjLine, QuarticSurface, SurfaceError, normalize, sum_f

NONMEMBER_SAMPLES = 41  # one more than deg(F_S) * deg(conic) = 20 * 2
DEGREE_BOUND = 20


class FlecnodalError(ValueError):
    pass


@dataclass
class FlecnodalSample:
    point: tuple
    A: BinaryForm
    B: BinaryForm
    res_value: object
    member: bool

    def to_json(self, F: Field) -> dict:
        return {"point": [F.fmt(c) for c in self.point], "member": self.member,
                "res_value": F.fmt(self.res_value)}


# ---------------------------------------------------------------------------
# pointwise test

def tangent_basis(S: QuarticSurface, P: Sequence) -> tuple[tuple, tuple]:
    """Two vectors spanning the tangent plane at ``P`` modulo ``P``.

    Rule: take the reduced echelon kernel basis of the gradient row and keep
    the first two vectors that are independent together with ``P``.
    """
    F = S.field
    g = S.gradient(P)
    if all(c == F.zero for c in g):
        raise FlecnodalError("singular point of the surface")
    chosen = []
    for v in kernel([list(g)], F):
        if rank([list(P)] + chosen + [list(v)], F) == len(chosen) + 2:
            chosen.append(list(v))
        if len(chosen) == 2:
            break
    return tuple(chosen[0]), tuple(chosen[1])


def tangent_forms(S: QuarticSurface, P: Sequence, basis=None) -> tuple[BinaryForm, BinaryForm]:
    """``(A, B)`` in directions ``a u + b w`` for the tangent basis ``(u, w)``."""
    F = S.field
    u, w = basis if basis is not None else tangent_basis(S, P)
    V = ("t", "a", "b")
    t, a, b = (MultiPoly.var(F, V, x) for x in V)
    imgs = [MultiPoly.const(F, V, P[i]) + t * (a.scale(u[i]) + b.scale(w[i])) for i in range(4)]
    g = S.f.compose(imgs)
    parts = g.coefficients_in("t")
    zero = MultiPoly(F, V)
    for k in (0, 1):
        if not parts.get(k, zero).is_zero():
            raise FlecnodalError("point is not on the surface" if k == 0 else "basis is not tangent")
    A = BinaryForm.from_poly(parts.get(2, zero), "a", "b", 2)
    B = BinaryForm.from_poly(parts.get(3, zero), "a", "b", 3)
    return A, B


def binary_resultant(A: BinaryForm, B: BinaryForm):
    """Resultant of two binary forms with their formal degrees."""
    F = A.field
    if A.is_zero() or B.is_zero():
        return F.zero  # some direction has contact >= 4
    ua = UniPoly(F, list(reversed(A.coeffs)), "a")
    ub = UniPoly(F, list(reversed(B.coeffs)), "a")
    return resultant(ua, ub, A.degree, B.degree)


def flecnodal_member(S: QuarticSurface, P: Sequence, basis=None) -> FlecnodalSample:
    F = S.field
    P = tuple(P)
    if S(P) != F.zero:
        raise FlecnodalError("point is not on the surface")
    A, B = tangent_forms(S, P, basis)
    r = binary_resultant(A, B)
    return FlecnodalSample(normalize(F, P), A, B, r, r == F.zero)


def sample_points_on_line(L: ProjLine, n: int = 5, seed: int = 0) -> list[tuple]:
    F = L.field
    rng = random.Random(seed)
    els = list(range(min(F.order, 1 << 16)))  # raw codes; integers over Q
    out = []
    for s in rng.sample(els, min(n, len(els))):
        out.append(L.point(F.one, s))
    return out


# ---------------------------------------------------------------------------
# conics

@dataclass
class ParametrizedConic:
    """``s, u -> (X1(s,u), ..., X4(s,u))`` with binary quadrics ``Xi``."""

    field: Field
    coords: tuple  # four BinaryForm of degree 2 in (s, u)

    def point(self, s, u) -> tuple:
        return tuple(X(s, u) for X in self.coords)

    def images(self, V=("s", "u")) -> list[MultiPoly]:
        F = self.field
        s, u = (MultiPoly.var(F, V, x) for x in V)
        out = []
        for X in self.coords:
            c2, c1, c0 = X.coeffs  # s^2, s u, u^2
            out.append(s * s * MultiPoly.const(F, V, c2) + s * u * MultiPoly.const(F, V, c1)
                       + u * u * MultiPoly.const(F, V, c0))
        return out

    def lies_on(self, S: QuarticSurface) -> bool:
        return S.f.compose(self.images()).is_zero()

    def is_degenerate(self) -> bool:
        F = self.field
        rows = [list(X.coeffs) for X in self.coords]
        return rank(rows, F) < 3


def parametrize_plane_conic(Q: MultiPoly, among: Sequence[str], embed) -> ParametrizedConic:
    """Rational parametrization of a smooth plane conic with a rational point,
    pushed to P^3 through ``embed`` (a 4x3 matrix)."""
    F = Q.field
    P0 = _conic_point(Q, among)
    if P0 is None:
        raise FlecnodalError("conic has no rational point")
    pos = [Q.vars.index(v) for v in among]

    def ev(p, X):
        pt = [F.zero] * len(p.vars)
        for i, x in zip(pos, X):
            pt[i] = x
        return p.evaluate(pt)

    grad = [ev(Q.derivative(v), P0) for v in among]
    k = next(i for i in range(3) if P0[i] != F.zero)
    E = [tuple(F.one if j == i else F.zero for j in range(3)) for i in range(3) if i != k]
    # X(s,u) = Q(D) P0 - (grad . D) D with D = s E1 + u E2
    V = ("s", "u")
    s, u = (MultiPoly.var(F, V, x) for x in V)
    D = [s.scale(E[0][i]) + u.scale(E[1][i]) for i in range(3)]
    Qimgs = []
    for name in Q.vars:
        Qimgs.append(D[among.index(name)] if name in among else MultiPoly(F, V))
    QD = Q.compose(Qimgs)
    gD = sum((D[i].scale(grad[i]) for i in range(3)), MultiPoly(F, V))
    X = [QD.scale(P0[i]) - gD * D[i] for i in range(3)]
    coords = []
    for row in embed:
        acc = sum((X[j].scale(row[j]) for j in range(3)), MultiPoly(F, V))
        coords.append(BinaryForm.from_poly(acc, "s", "u", 2))
    return ParametrizedConic(F, tuple(coords))


def _conic_point(Q: MultiPoly, among) -> tuple | None:
    F = Q.field
    pos = [Q.vars.index(v) for v in among]
    x, y, z = among
    for a in [F.zero, F.one] + [F.convert(i) for i in range(2, min(F.order, 4096))]:
        # points (a : y : 1) and (1 : y : 0) as roots in y
        for fixed in ({x: a, z: F.one}, {x: F.one, z: F.zero} if a == F.zero else None):
            if fixed is None:
                continue
            r = Q.subs(fixed)
            uy = r.to_unipoly(y) if not r.is_zero() else None
            if uy is None:
                pt = (fixed[x], F.zero, fixed[z])
                return pt
            if uy.degree <= 0:
                continue
            from .algebra.upoly import rational_roots_finite
            roots = rational_roots_finite(uy)
            if roots:
                return (fixed[x], roots[0], fixed[z])
    return None


def _conic_param_points(C: ParametrizedConic, n: int) -> list[tuple]:
    F = C.field
    seen = []
    keys = set()
    params = [(F.one, F.zero)] + [(c, F.one) for c in _field_values(F)]
    for s, u in params:
        X = C.point(s, u)
        if all(c == F.zero for c in X):
            continue
        key = normalize(F, X)
        if key in keys:
            continue
        keys.add(key)
        seen.append(key)
        if len(seen) >= n:
            break
    return seen


def _field_values(F: Field):
    return iter(range(F.order))  # element codes


def conic_nonmembership(S: QuarticSurface, conic: ParametrizedConic, samples: int = NONMEMBER_SAMPLES) -> bool:
    """True iff some sampled point of the conic is not flecnodal, which
    certifies that the conic is not a component of the flecnodal divisor.

    ``False`` is returned only after ``samples`` flecnodal points: a conic
    not in the divisor meets it in at most 40 points, so it is a component.
    """
    F = S.field
    if conic.is_degenerate():
        raise FlecnodalError("parametrization does not describe a conic")
    if not conic.lies_on(S):
        raise FlecnodalError("conic is not contained in the surface")
    pts = _conic_param_points(conic, samples)
    if len(pts) < samples:
        raise FlecnodalError(f"only {len(pts)} rational points on the conic; enlarge field")
    for P in pts:
        if not flecnodal_member(S, P).member:
            return True
    return False


# ---------------------------------------------------------------------------
# budgets

@dataclass
class BudgetReport:
    lines: int
    max_degree: int
    violations: list[str] = field(default_factory=list)
    conic_checks: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"lines": self.lines, "max_degree": self.max_degree, "passed": self.passed,
                "violations": self.violations, "conic_checks": self.conic_checks}


def line_budget_audit(census: CensusResult, graph: IncidenceGraph, surface: QuarticSurface | None = None,
                      flecnodal_samples: int = 0, seed: int = 0) -> BudgetReport:
    """At most 80 lines; every line meets at most 20 others; optionally
    every line is flecnodal at sampled points."""
    degs = graph.degrees
    rep = BudgetReport(census.count, max(degs, default=0))
    if census.spec.p == 3:
        rep.conic_checks.append({"note": "characteristic 3: the flecnodal bounds do not apply"})
        return rep
    if census.count > LINE_BUDGET:
        rep.violations.append(f"{census.count} lines exceed {LINE_BUDGET}")
    F = census.spec.field()
    for i, d in enumerate(degs):
        if d > DEGREE_BOUND:
            rep.violations.append(f"line {[F.fmt(c) for c in census.lines[i].pluecker]} meets {d} > {DEGREE_BOUND} lines")
    if surface is not None and flecnodal_samples:
        for i, L in enumerate(census.lines):
            for P in sample_points_on_line(L, flecnodal_samples, seed + i):
                if not flecnodal_member(surface, P).member:
                    rep.violations.append(f"point {[F.fmt(c) for c in P]} of a line is not flecnodal")
    return rep


def conic_line_bound(S: QuarticSurface, conic: ParametrizedConic, lines: Sequence[ProjLine],
                     in_plane: Sequence[ProjLine] = ()) -> dict:
    """Lines meeting a non-flecnodal conic: at most 40, and at most 36 besides
    two coplanar lines that each meet it twice."""
    F = S.field
    certified = conic_nonmembership(S, conic)
    meeting = [L for L in lines if L not in in_plane and _line_meets_conic(L, conic)]
    bound = 40 - 2 * len(in_plane)
    return {"certified": certified, "meeting": len(meeting), "bound": bound,
            "passed": (not certified) or len(meeting) <= bound}


def _line_meets_conic(L: ProjLine, C: ParametrizedConic) -> bool:
    """Does some point of the conic lie on ``L``?"""
    F = C.field
    # the conic point X(s,u) lies on L iff it satisfies the two equations of L
    eqs = kernel([list(L.basis[0]), list(L.basis[1])], F)
    forms = []
    for e in eqs:
        acc = [F.zero] * 3
        for X, c in zip(C.coords, e):
            acc = [F.add(a, F.mul(c, x)) for a, x in zip(acc, X.coeffs)]
        forms.append(UniPoly(F, list(reversed(acc)), "s"))
    a, b = forms
    return resultant(a, b, 2, 2) == F.zero


# ---------------------------------------------------------------------------
# the degree of the flecnodal divisor, symbolically along a conic

@dataclass
class DegreeCheck:
    restricted_degree: int  # total degree of Res(A, B) along the conic
    chart_factor_degree: int  # degree of (g_k x_m)^6 along the conic
    residual_degree: int  # degree of the flecnodal divisor cut on the conic

    @property
    def divisor_degree(self) -> Fraction:
        """Degree of the flecnodal divisor as a multiple of the hyperplane class."""
        return Fraction(self.residual_degree, 2)


def flecnodal_degree_on_conic(S: QuarticSurface, conic: ParametrizedConic, chart: tuple = (1, 2, 3)) -> DegreeCheck:
    """Restrict ``Res(A, B)`` to the conic with the polynomial tangent basis
    ``v1 = g_k e_i - g_i e_k``, ``v2 = g_k e_j - g_j e_k`` for ``chart = (i, j, k)``.

    On S one has ``P ^ v1 ^ v2 = g_k x_m * (gradient)``, ``m`` the unused
    index, so the resultant equals ``(g_k x_m)^6`` times a chart-free form.
    That factor is divided out exactly; what remains is the flecnodal divisor
    cut on the conic.  Slow; a verification path only.
    """
    F = S.field
    i, j, k = chart
    m = ({0, 1, 2, 3} - {i, j, k}).pop()
    W = ("s", "u", "t", "a", "b")
    X = list(conic.images())
    grads = [S.f.derivative(v).compose(X) for v in VARS]
    chart_factor = (grads[k] * X[m]) ** 6
    if chart_factor.is_zero():
        raise FlecnodalError("chart degenerates on the conic; choose another")
    lift = lambda p: p.reorder(W)
    t, a, b = (MultiPoly.var(F, W, x) for x in ("t", "a", "b"))
    zero = MultiPoly(F, W)
    v1 = [zero] * 4
    v2 = [zero] * 4
    v1[i], v1[k] = lift(grads[k]), -lift(grads[i])
    v2[j], v2[k] = lift(grads[k]), -lift(grads[j])
    imgs = [lift(X[n]) + t * (a * v1[n] + b * v2[n]) for n in range(4)]
    parts = S.f.compose(imgs).coefficients_in("t")
    A = parts.get(2, zero)
    B = parts.get(3, zero)
    su = ("s", "u")

    def coeff(p, da):
        return MultiPoly(F, su, {(e[0], e[1]): c for e, c in p.terms.items() if e[3] == da})

    ca = [coeff(A, 2 - r) for r in range(3)]  # a^2, a b, b^2
    cb = [coeff(B, 3 - r) for r in range(4)]
    zs = MultiPoly(F, su)
    rows = [[zs] * r + ca + [zs] * (2 - r) for r in range(3)]
    rows += [[zs] * r + cb + [zs] * (1 - r) for r in range(2)]
    R = bareiss_determinant(rows)
    if R.is_zero():
        raise FlecnodalError("resultant vanishes on the conic (degenerate chart or flecnodal conic)")
    total = R.total_degree()
    try:
        R = R.exquo(chart_factor)
    except ArithmeticError:
        raise FlecnodalError("resultant is not divisible by the chart factor") from None
    return DegreeCheck(total, chart_factor.total_degree(), R.total_degree())
