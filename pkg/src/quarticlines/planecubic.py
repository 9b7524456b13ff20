"""Kodaira bookkeeping and classification of reduced plane cubics.

A plane cubic ``C`` is classified by two exact, extension-free computations:

* the length of its Jacobian scheme ``V(C_x, C_y, C_z)`` (read off the
  Hilbert function), which is the total Milnor number and equals the Euler
  number of the curve: smooth 0, nodal 1, cuspidal 2, conic + secant line 2,
  conic + tangent line 3, triangle 3, three concurrent lines 4;
* the rank of the Hessian matrix at the singular points defined over the
  coefficient field (a unique singular point is always defined there).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .algebra.fields import Field
from .algebra.linalg import rank
from .algebra.mpoly import BinaryForm, MultiPoly, hessian_matrix, resultant_in
from .algebra.upoly import UniPoly, gcd, rational_roots_finite, roots_with_multiplicity


# ---------------------------------------------------------------------------
# Kodaira classes

_EULER = {"I0": 0, "II": 2, "III": 3, "IV": 4, "I0*": 6, "IV*": 8, "III*": 9}
_LINES = {"I0": 0, "I1": 0, "I2": 1, "I3": 3, "II": 0, "III": 1, "IV": 3}


@dataclass(frozen=True, order=True)
class Kodaira:
    """Fibre type.  ``I_n`` carries ``n``; ``PATH`` carries a reason."""

    name: str
    n: int = 0
    reason: str = ""

    @classmethod
    def I(cls, n: int) -> "Kodaira":
        if n < 0:
            raise ValueError("I_n needs n >= 0")
        return cls("I0") if n == 0 else cls("In", n)

    @classmethod
    def parse(cls, text: str) -> "Kodaira":
        t = text.strip().replace("_", "")
        if t in ("smooth", "I0"):
            return cls("I0")
        if t.startswith("I") and t[1:].isdigit():
            return cls.I(int(t[1:]))
        if t in _EULER:
            return cls(t)
        raise ValueError(f"unknown fibre type {text!r}")

    @property
    def label(self) -> str:
        if self.name == "In":
            return f"I{self.n}"
        if self.name == "PATH":
            return f"pathological({self.reason})"
        return self.name

    @property
    def euler(self) -> int:
        if self.name == "In":
            return self.n
        if self.name == "PATH":
            raise ValueError("pathological fibre has no Euler number")
        return _EULER[self.name]

    @property
    def line_count(self) -> int:
        """Line components of a residual cubic of this type."""
        return _LINES.get(self.label, 0)

    @property
    def is_semistable(self) -> bool:
        return self.name == "In"

    def __str__(self):
        return self.label


SMOOTH = Kodaira("I0")
I1, I2, I3 = Kodaira.I(1), Kodaira.I(2), Kodaira.I(3)
II, III, IV = Kodaira("II"), Kodaira("III"), Kodaira("IV")
I0_STAR, III_STAR, IV_STAR = Kodaira("I0*"), Kodaira("III*"), Kodaira("IV*")


def pathological(reason: str) -> Kodaira:
    return Kodaira("PATH", 0, reason)


def base_change_type(k: Kodaira, d: int) -> Kodaira:
    """Fibre type after a cyclic base change of degree ``d`` ramified at the fibre."""
    if d not in (1, 2, 3):
        raise ValueError("base change degree must be 1, 2 or 3")
    if k.name in ("In", "I0"):
        return Kodaira.I(k.n * d)
    table = {"II": (II, IV, I0_STAR), "III": (III, I0_STAR, III_STAR), "IV": (IV, IV_STAR, SMOOTH)}
    if k.name not in table:
        raise ValueError(f"no base change rule for {k}")
    return table[k.name][d - 1]


@dataclass(frozen=True)
class FlexSupport:
    smooth_points: int
    smooth_on: str  # "curve" | "line component" | "each component"
    singular: str | None  # "node" | "both nodes" | "cusp" | "tacnode" | "triple point"


_FLEX = {
    "I1": FlexSupport(3, "curve", "node"),
    "I2": FlexSupport(3, "line component", "both nodes"),
    "I3": FlexSupport(3, "each component", None),
    "II": FlexSupport(1, "curve", "cusp"),
    "III": FlexSupport(1, "line component", "tacnode"),
    "IV": FlexSupport(1, "each component", "triple point"),
}


def flex_support(k: Kodaira) -> FlexSupport:
    """Where the closure of the flex locus of the smooth fibres meets a singular fibre."""
    try:
        return _FLEX[k.label]
    except KeyError:
        raise ValueError(f"no flex-support entry for {k}") from None


# ---------------------------------------------------------------------------
# Jacobian scheme

def _monomials(n: int, d: int) -> list[tuple]:
    out = []
    for e in itertools.product(range(d + 1), repeat=n):
        if sum(e) == d:
            out.append(e)
    return sorted(out, reverse=True)


def hilbert_function(gens: Sequence[MultiPoly], among: Sequence[str], m: int) -> int:
    """``dim (R/I)_m`` for the ideal generated by homogeneous ``gens``."""
    F = gens[0].field
    idx = [gens[0].vars.index(v) for v in among]
    mons = _monomials(len(among), m)
    col = {e: i for i, e in enumerate(mons)}
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        dg = g.total_degree()
        if dg > m:
            continue
        for mult in _monomials(len(among), m - dg):
            row = [F.zero] * len(mons)
            for e, c in g.terms.items():
                ee = tuple(e[i] + k for i, k in zip(idx, mult))
                row[col[ee]] = c
            rows.append(row)
    return len(mons) - (rank(rows, F) if rows else 0)


def jacobian_length(C: MultiPoly, among: Sequence[str]) -> int | None:
    """Length of ``V(C_x, C_y, C_z)``; ``None`` when it is not finite."""
    parts = [C.derivative(v) for v in among]
    h = [hilbert_function(parts, among, m) for m in (5, 6, 7)]
    if h[0] == h[1] == h[2]:
        return h[2]
    return None


# ---------------------------------------------------------------------------
# rational points of zero-dimensional intersections in P^2

class InfiniteLocus(Exception):
    pass


def common_zeros_p2(polys: Sequence[MultiPoly], among: Sequence[str]) -> list[tuple]:
    """Normalised points of ``P^2(F)`` where all ternary forms vanish.

    Raises :class:`InfiniteLocus` when the common zero set contains a curve.
    """
    F = polys[0].field
    u, v, w = among
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise InfiniteLocus("all forms vanish")
    out = set()
    # points on w = 0
    bins = []
    for p in polys:
        r = p.subs({w: F.zero})
        bins.append(r)
    nz = [b for b in bins if not b.is_zero()]
    if not nz:
        raise InfiniteLocus("line w=0 is contained")
    b0 = BinaryForm.from_poly(nz[0].reorder((u, v)), u, v, nz[0].total_degree())
    for (x, y), _ in b0.roots():
        pt = (x, y, F.zero)
        if all(p.evaluate(_place(p, among, pt)) == F.zero for p in polys):
            out.add(_norm(F, pt))
    # affine chart w = 1
    aff = [p.subs({w: F.one}) for p in polys]
    r = _eliminant(aff, u, v)
    if r is None:
        raise InfiniteLocus("no nonzero eliminant")
    for x0 in _roots_or_all(F, r):
        cols = [a.subs({u: x0}).to_unipoly(v) for a in aff]
        g = None
        for c in cols:
            if not c.is_zero():
                g = c if g is None else gcd(g, c)
        if g is None:
            raise InfiniteLocus("vertical line contained")
        if g.degree <= 0:
            continue
        for y0 in rational_roots_finite(g):
            out.add(_norm(F, (x0, y0, F.one)))
    return sorted(out)


def _place(p: MultiPoly, among, pt):
    vals = [p.field.zero] * len(p.vars)
    for name, c in zip(among, pt):
        vals[p.vars.index(name)] = c
    return vals


def _norm(F, pt):
    for c in pt:
        if c != F.zero:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in pt)
    raise ValueError("zero point")


def _eliminant(aff: Sequence[MultiPoly], u: str, v: str) -> UniPoly | None:
    """A nonzero univariate polynomial in ``u`` vanishing at the u-coordinate of
    every common zero, from resultants of fixed combinations of the inputs."""
    F = aff[0].field
    n = len(aff)
    combos = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 2, 3), (1, 3, 2), (2, 1, 5), (1, 5, 7)]
    cands = []
    for c in combos:
        p = None
        for k in range(n):
            coef = c[k % 3] + (k // 3)
            if coef:
                term = aff[k].scale(F.from_int(coef))
                p = term if p is None else p + term
        if p is not None and not p.is_zero():
            cands.append(p)
    dv = max(a.degree_in(v) for a in aff)
    if dv <= 0:
        # no v at all: the u-polynomials themselves cut out the points
        g = None
        for a in aff:
            if not a.is_zero():
                ua = a.to_unipoly(u)
                g = ua if g is None else gcd(g, ua)
        return g
    for a, b in itertools.combinations(cands, 2):
        r = resultant_in(a, b, v, dv, dv)
        if not r.is_zero():
            return r.to_unipoly(u)
    return None


def _roots_or_all(F: Field, r: UniPoly):
    if r.is_zero():
        return list(F.elements())
    if r.degree <= 0:
        return []
    return rational_roots_finite(r)


# ---------------------------------------------------------------------------
# linear factors

def _line_points(F: Field, form: Sequence) -> tuple[tuple, tuple]:
    """Two points spanning the projective line ``form . x = 0``."""
    from .algebra.linalg import kernel
    K = kernel([list(form)], F)
    return tuple(K[0]), tuple(K[1])


def vanishes_on_line(C: MultiPoly, among: Sequence[str], form: Sequence) -> bool:
    F = C.field
    P, Q = _line_points(F, form)
    # a cubic vanishing at 4 points of a line contains it
    pts = [Q] + [tuple(F.add(p, F.mul(t, q)) for p, q in zip(P, Q)) for t in (F.zero, F.one, F.from_int(2))]
    return all(C.evaluate(_place(C, among, pt)) == F.zero for pt in pts)


def linear_form(F: Field, among: Sequence[str], variables: Sequence[str], form: Sequence) -> MultiPoly:
    t = {}
    for name, c in zip(among, form):
        if c != F.zero:
            e = [0] * len(variables)
            e[variables.index(name)] = 1
            t[tuple(e)] = c
    return MultiPoly(F, variables, t)


def rational_line_factors(C: MultiPoly, among: Sequence[str]) -> tuple[list[tuple], MultiPoly]:
    """Linear factors of ``C`` over its field (normalised coefficient vectors,
    with repetition) and the cofactor."""
    F = C.field
    out = []
    cur = C
    while cur.total_degree() >= 1:
        form = _find_line(cur, among)
        if form is None:
            break
        out.append(form)
        cur = cur.exquo(linear_form(F, among, cur.vars, form))
    return out, cur


def _find_line(C: MultiPoly, among: Sequence[str]) -> tuple | None:
    F = C.field
    d = C.total_degree()
    if d == 1:
        return _norm(F, [C.terms.get(tuple(1 if C.vars[i] == a else 0 for i in range(len(C.vars))), F.zero)
                         for a in among])
    pts_by_axis = []
    for k, a in enumerate(among):
        form = [F.zero] * 3
        form[k] = F.one
        if vanishes_on_line(C, among, form):
            return tuple(form)
        others = [b for b in among if b != a]
        r = C.subs({a: F.zero})
        bf = BinaryForm.from_poly(r.reorder(others), others[0], others[1], d)
        pts = []
        for (x, y), _ in bf.roots():
            pt = [F.zero] * 3
            pt[among.index(others[0])] = x
            pt[among.index(others[1])] = y
            pts.append(tuple(pt))
        pts_by_axis.append(pts)
    seen = set()
    for i, j in itertools.combinations(range(3), 2):
        for P in pts_by_axis[i]:
            for Q in pts_by_axis[j]:
                if _norm(F, P) == _norm(F, Q):
                    continue
                form = _cross(F, P, Q)
                form = _norm(F, form)
                if form in seen:
                    continue
                seen.add(form)
                if vanishes_on_line(C, among, form):
                    return form
    return None


def _cross(F, P, Q):
    return (F.sub(F.mul(P[1], Q[2]), F.mul(P[2], Q[1])),
            F.sub(F.mul(P[2], Q[0]), F.mul(P[0], Q[2])),
            F.sub(F.mul(P[0], Q[1]), F.mul(P[1], Q[0])))


# ---------------------------------------------------------------------------
# classification

@dataclass
class SingularPoint:
    point: tuple
    hessian_rank: int


@dataclass
class CubicFiber:
    kind: Kodaira
    milnor: int | None
    singular_points: list[SingularPoint] = field(default_factory=list)
    lines: list[tuple] = field(default_factory=list)  # rational linear components
    residual: MultiPoly | None = None  # cofactor of the rational lines
    euler_mismatch: bool = False

    @property
    def line_count(self) -> int:
        return self.kind.line_count


def classify_plane_cubic(C: MultiPoly, among: Sequence[str] | None = None,
                         euler: int | None = None) -> CubicFiber:
    """Kodaira type of the plane cubic ``C``.

    ``euler`` (the order of the pencil discriminant, when known) is compared
    with the intrinsic Milnor number; a disagreement is recorded, not fatal.
    """
    if C.is_zero():
        raise ValueError("zero polynomial is not a cubic")
    if among is None:
        among = [v for v in C.vars if v in C.used_vars()]
        if len(among) != 3:
            among = list(C.vars[:3])
    among = list(among)
    if not C.is_homogeneous(3, among) or (C.used_vars() - set(among)):
        raise ValueError("expected a homogeneous cubic in three variables")
    F = C.field
    mu = jacobian_length(C, among)
    lines, residual = rational_line_factors(C, among)
    if mu is None:
        kind = pathological("non-reduced")
        return CubicFiber(kind, None, [], lines, residual, euler is not None)
    try:
        sing = common_zeros_p2([C.derivative(v) for v in among], among)
    except InfiniteLocus:  # pragma: no cover - excluded by finite Milnor number
        return CubicFiber(pathological("non-isolated singularities"), mu, [], lines, residual, True)
    H = hessian_matrix(C, among)
    sps = []
    for P in sing:
        M = [[h.evaluate(_place(h, among, P)) for h in row] for row in H]
        sps.append(SingularPoint(P, rank(M, F)))
    ranks = {s.hessian_rank for s in sps}
    if mu == 0:
        kind = SMOOTH
    elif mu == 1:
        kind = I1
    elif mu == 2:
        kind = II if 1 in ranks else I2
    elif mu == 3:
        kind = III if 1 in ranks else I3
    elif mu == 4:
        kind = IV if 0 in ranks else pathological("Milnor number 4 without a triple point")
    else:
        kind = pathological(f"Milnor number {mu}")
    if kind == IV:
        P = next(s.point for s in sps if s.hessian_rank == 0)
        lines = _lines_through(C, among, P) or lines
    return CubicFiber(kind, mu, sps, lines, residual, euler is not None and euler != mu)


def _lines_through(C: MultiPoly, among, P) -> list[tuple]:
    """Rational lines of a cone over ``P`` (cubic with a triple point at ``P``)."""
    F = C.field
    lines = []
    # lines through P: join with points of an auxiliary line not through P
    k = next(i for i in range(3) if P[i] != F.zero)
    aux = [F.zero] * 3
    aux[k] = F.one
    A, B = _line_points(F, aux)
    # the restriction to the auxiliary line is the binary cubic of the cone
    a, b = (MultiPoly.var(F, ("s", "t"), "s"), MultiPoly.var(F, ("s", "t"), "t"))
    images = []
    for name in C.vars:
        if name in among:
            i = among.index(name)
            images.append(a.scale(A[i]) + b.scale(B[i]))
        else:
            images.append(MultiPoly(F, ("s", "t")))
    r = C.compose(images)
    bf = BinaryForm.from_poly(r, "s", "t", 3)
    for (s0, t0), m in bf.roots():
        X = tuple(F.add(F.mul(s0, x), F.mul(t0, y)) for x, y in zip(A, B))
        lines.extend([_norm(F, _cross(F, P, X))] * m)
    return lines
