"""The genus-one pencil cut out by the planes through a line on a quartic.

Conventions: the line is first moved to ``{x3 = x4 = 0}`` by the frame of
:func:`surface.line_frame`.  A pencil parameter ``t = (t0 : t1)`` names the
plane whose points have ``(x3 : x4) = (t0 : t1)``; the affine coordinate is
``t = t0 / t1`` and ``t = inf`` is the plane ``x4 = 0``.  The residual cubic
lives in plane coordinates ``(x1, x2, s)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .algebra.fields import Field, FieldEmbedding, FieldError, FieldSpec, PolyExtensionField, finite_field
from .algebra.linalg import bareiss_determinant, determinant, inverse, matmul
from .algebra.mpoly import BinaryForm, MultiPoly, binary_discriminant, det3, hessian_determinant, resultant_in
from .algebra.upoly import UniPoly, irreducible_factors, rational_roots_finite
from .planecubic import (I1, I2, I3, II, III, IV, CubicFiber, Kodaira, classify_plane_cubic, flex_support,
                         pathological, _line_points)
from .surface import PLANE_VARS, VARS, ProjLine, QuarticSurface, normalize_line, sum_f

log = logging.getLogger(__name__)

EXTENSION_LIMIT = 1 << 21  # residue fields over a non-prime base are built by tables
TABLE_LIMIT = 1 << 16  # larger residue fields use plain polynomial arithmetic
G_R = {"1^4": frozenset({12}), "2,1^2": frozenset({15, 16}), "2^2": frozenset({18, 19, 20})}


class FibrationError(RuntimeError):
    pass


class NotInFamilyZ(FibrationError):
    pass


# ---------------------------------------------------------------------------
# field helpers

@lru_cache(maxsize=None)
def _embedding(small: FieldSpec, big: FieldSpec) -> FieldEmbedding:
    return FieldEmbedding(small.field(), big.field())


def extend_field(F: Field, d: int) -> Field:
    """``F_{q^d}`` for ``F = F_q``."""
    return finite_field(F.spec.p, F.spec.k * d)


def map_poly(f, G: Field):
    """Coefficients of a UniPoly or MultiPoly pushed into a larger field ``G``."""
    F = f.field
    if F.spec == G.spec:
        return f
    if F.spec.k == 1 and F.spec.p == G.spec.p:
        emb = lambda c: c  # prime-field codes keep their meaning in every extension
    else:
        emb = _embedding(F.spec, G.spec)
    if isinstance(f, UniPoly):
        return UniPoly(G, [emb(c) for c in f.coeffs], f.var)
    return MultiPoly(G, f.vars, {e: emb(c) for e, c in f.terms.items()})


def root_multiplicity(f: UniPoly, r) -> int:
    """Order of vanishing of ``f`` at ``r`` (``f`` over the field of ``r``)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    F = f.field
    lin = UniPoly(F, [F.neg(r), F.one], f.var)
    m = 0
    while True:
        q, rem = f.divmod(lin)
        if not rem.is_zero():
            return m
        f, m = q, m + 1


def _place_key(h: UniPoly | None):
    return None if h is None else tuple(h.monic().coeffs)


def residue_point(h: UniPoly, limit: int = EXTENSION_LIMIT):
    """A root of the irreducible ``h``: ``(G, r)`` with ``G`` a field holding it.

    Over a prime field the residue field is built with ``h`` itself as the
    defining polynomial, so the root is the class of the variable.  Returns
    ``(None, None)`` when a non-prime base would need a field above ``limit``.
    """
    F = h.field
    d = h.degree
    if d == 1:
        return F, F.neg(F.div(h.coeffs[0], h.coeffs[1]))
    if F.spec.k == 1:
        spec = FieldSpec.extension(F.spec.p, d, [int(c) for c in h.monic().coeffs])
        G = spec.field() if spec.order <= TABLE_LIMIT else PolyExtensionField(spec)
        return G, F.spec.p  # code of the generator
    if F.order**d > limit:
        return None, None
    G = extend_field(F, d)
    return G, min(rational_roots_finite(map_poly(h, G)))


# ---------------------------------------------------------------------------
# discriminant of a ternary cubic (Sylvester's formula for three quadrics)

_QUAD_MONS = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def _quadric_row(q: MultiPoly, among: Sequence[str], extra: str | None):
    """Coefficients of a quadric in ``among``; UniPoly in ``extra`` if given."""
    F = q.field
    idx = [q.vars.index(v) for v in among]
    if extra is None:
        row = {m: F.zero for m in _QUAD_MONS}
        for e, c in q.terms.items():
            row[tuple(e[i] for i in idx)] = c
        return [row[m] for m in _QUAD_MONS]
    j = q.vars.index(extra)
    rows: dict = {m: {} for m in _QUAD_MONS}
    for e, c in q.terms.items():
        rows[tuple(e[i] for i in idx)][e[j]] = c
    out = []
    for m in _QUAD_MONS:
        d = rows[m]
        deg = max(d) if d else -1
        out.append(UniPoly(F, [d.get(k, F.zero) for k in range(deg + 1)], extra))
    return out


def cubic_discriminant(C: MultiPoly, among: Sequence[str], extra: str | None = None):
    """Resultant of the three partials of a ternary cubic, via the 6x6
    determinant of the partials together with the partials of the Hessian.

    Vanishes exactly when the cubic is singular.  With ``extra`` naming a
    pencil parameter the result is a :class:`UniPoly` in that parameter.
    """
    parts = [C.derivative(v) for v in among]
    H = hessian_determinant(C, among)
    hparts = [H.derivative(v) for v in among]
    rows = [_quadric_row(q, among, extra) for q in parts + hparts]
    if extra is None:
        return determinant(rows, C.field)
    return bareiss_determinant(rows)


# ---------------------------------------------------------------------------
# results

@dataclass
class FiberRecord:
    t: tuple | None  # (t0, t1) raw values in ``spec``; None if not enumerated
    spec: FieldSpec | None
    minpoly: UniPoly | None  # minimal polynomial of t0/t1 over the base field; None at inf
    conjugates: int  # number of fibres represented (Galois orbit size)
    kind: Kodaira
    euler: int  # order of the pencil discriminant
    milnor: int | None
    ramification: int = 0  # order of the branch form: 0, 1 (two preimages) or 2 (one)
    lines: list[ProjLine] = field(default_factory=list)  # rational components in P^3
    euler_mismatch: bool = False

    @property
    def place(self):
        return _place_key(self.minpoly)

    @property
    def line_count(self) -> int:
        return self.kind.line_count * self.conjugates

    def t_label(self) -> str:
        return place_label(self.minpoly)


def place_label(h: UniPoly | None) -> str:
    """``inf``, a base-field value, or the minimal polynomial of the orbit."""
    if h is None:
        return "inf"
    F = h.field
    if h.degree == 1:
        return F.fmt(F.neg(F.div(h.coeffs[0], h.coeffs[1])))
    return f"root of {h}"


@dataclass
class RamificationPoint:
    minpoly: UniPoly | None  # None at inf
    conjugates: int
    order: int  # 1: indices (2,1); 2: index (3)

    @property
    def place(self):
        return _place_key(self.minpoly)

    def rational_t(self, F):
        """``(t0, t1)`` when the point is defined over the base field."""
        if self.minpoly is None:
            return (F.one, F.zero)
        if self.minpoly.degree != 1:
            return None
        return (F.neg(self.minpoly.coeffs[0]), F.one)

    @property
    def indices(self) -> tuple[int, ...]:
        return (2, 1) if self.order == 1 else (3,)


@dataclass
class RamificationProfile:
    branch_form: UniPoly  # discriminant of t0*A + t1*B in the affine chart t1 = 1
    points: list[RamificationPoint]
    R: str
    rh_sum: int

    def order_at(self, minpoly: UniPoly | None) -> int:
        if minpoly is None:
            return 4 - self.branch_form.degree
        m, f = 0, self.branch_form
        while True:
            q, r = f.divmod(minpoly)
            if not r.is_zero():
                return m
            f, m = q, m + 1


@dataclass
class LineKind:
    kind: str  # FIRST | SECOND
    r: UniPoly

    @property
    def degree(self) -> int | None:
        return None if self.r.is_zero() else self.r.degree


@dataclass
class FibrationReport:
    line: ProjLine
    frame: list[list]
    discriminant: UniPoly
    fibers: list[FiberRecord]
    ramification: RamificationProfile | None = None
    kind: LineKind | None = None
    checks: dict = field(default_factory=dict)
    families: tuple = field(default=(), repr=False)  # Gamma over the charts t1 = 1 and t0 = 1

    @property
    def N(self) -> int:
        return sum(f.line_count for f in self.fibers)

    @property
    def euler_total(self) -> int:
        return sum(f.euler * f.conjugates for f in self.fibers)

    def type_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for f in self.fibers:
            out[f.kind.label] = out.get(f.kind.label, 0) + f.conjugates
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        F = self.line.field
        return {
            "line": [F.fmt(c) for c in self.line.pluecker],
            "kind": self.kind.kind if self.kind else None,
            "r_degree": self.kind.degree if self.kind else None,
            "R": self.ramification.R if self.ramification else None,
            "fibers": [{"t": f.t_label(), "conjugates": f.conjugates, "type": f.kind.label,
                        "euler": f.euler, "ramification": f.ramification,
                        "lines": [[F.fmt(c) for c in L.pluecker] for L in f.lines]}
                       for f in self.fibers],
            "types": self.type_counts(),
            "N": self.N,
            "euler": self.euler_total,
            "checks": self.checks,
        }


# ---------------------------------------------------------------------------
# residual cubic families

def _family(Sn: QuarticSurface, flipped: bool = False) -> MultiPoly:
    """``Gamma`` over the affine pencil chart: ``(t0, t1) = (t, 1)``, or with
    ``flipped`` ``(1, t)``.  Variables ``(x1, x2, s, t)``."""
    F = Sn.field
    V = PLANE_VARS + ("t",)
    x1, x2, s, t = (MultiPoly.var(F, V, v) for v in V)
    imgs = [x1, x2, s, t * s] if flipped else [x1, x2, t * s, s]
    return Sn.f.compose(imgs).exquo(s)


def _fiber_cubic(fam: MultiPoly, t_val, G: Field) -> MultiPoly:
    g = map_poly(fam, G).subs({"t": t_val})
    return g.reorder(PLANE_VARS)


def _plane_line_to_p3(form: Sequence, t: tuple, M: Sequence[Sequence], F: Field) -> ProjLine:
    """Line ``form . (x1, x2, s) = 0`` of the plane ``H_t`` as a line of P^3."""
    P, Q = _line_points(F, form)
    t0, t1 = t

    def lift(X):
        y = [X[0], X[1], F.mul(t0, X[2]), F.mul(t1, X[2])]
        return [sum_f(F, (F.mul(M[i][j], y[j]) for j in range(4))) for i in range(4)]

    return ProjLine.through(F, lift(P), lift(Q))


# ---------------------------------------------------------------------------
# singular fibres

def singular_fibers(S: QuarticSurface, L: ProjLine, classify_simple: bool = False) -> FibrationReport:
    """All singular fibres of the pencil through ``L`` with their types.

    Each Galois orbit of roots of the discriminant is classified at one
    representative in its residue field; ``t = inf`` is read in the flipped
    chart.
    """
    F = S.field
    if not F.is_finite:
        raise FieldError("fibration analysis runs over finite fields")
    Sn, M = normalize_line(S, L)
    fam = _family(Sn)
    Delta = cubic_discriminant(fam, PLANE_VARS, "t")
    if Delta.is_zero():
        raise FibrationError("every member of the pencil is singular (surface singular?)")
    fibers: list[FiberRecord] = []
    for h, mult in irreducible_factors(Delta):
        if mult == 1 and not classify_simple:
            # a simple zero of the discriminant is a nodal cubic
            fibers.append(FiberRecord(None, None, h, h.degree, I1, 1, 1))
            continue
        G, r = residue_point(h)
        if G is None:
            kind = I1 if mult == 1 else pathological("residue field too large")
            fibers.append(FiberRecord(None, None, h, h.degree, kind, mult, None))
            continue
        fibers.append(_classify_at(fam, (r, G.one), G, mult, h, M, F))
    fam_inf = _family(Sn, flipped=True)
    Dinf = cubic_discriminant(fam_inf, PLANE_VARS, "t")
    e_inf = root_multiplicity(Dinf, F.zero)
    if e_inf == 1 and not classify_simple:
        fibers.append(FiberRecord((F.one, F.zero), F.spec, None, 1, I1, 1, 1))
    elif e_inf:
        fibers.append(_classify_at(fam_inf, (F.zero, F.one), F, e_inf, None, M, F, at_infinity=True))
    return FibrationReport(L, M, Delta, fibers, families=(fam, fam_inf))


def _classify_at(fam, t, G, mult, h, M, F, at_infinity=False) -> FiberRecord:
    C = _fiber_cubic(fam, t[0], G)
    res: CubicFiber = classify_plane_cubic(C, PLANE_VARS, euler=mult)
    tt = (G.one, G.zero) if at_infinity else t
    lines = []
    if G.spec == F.spec:
        for form in dict.fromkeys(res.lines):
            lines.append(_plane_line_to_p3(form, tt, M, F))
    conj = 1 if h is None else h.degree
    return FiberRecord(tt, G.spec, h, conj, res.kind, mult, res.milnor, 0, lines, res.euler_mismatch)


# ---------------------------------------------------------------------------
# ramification of the degree-3 map from the line to P^1

def trace_forms(Sn: QuarticSurface) -> tuple[MultiPoly, MultiPoly]:
    """``(A, B)`` with ``f = x3 A + x4 B + O(x3, x4)^2``: binary cubics in x1, x2."""
    F = Sn.field
    z = {"x3": F.zero, "x4": F.zero}
    A = Sn.f.derivative("x3").subs(z).reorder(("x1", "x2"))
    B = Sn.f.derivative("x4").subs(z).reorder(("x1", "x2"))
    return A, B


def ramification_profile(S: QuarticSurface, L: ProjLine) -> RamificationProfile:
    """Branch points of ``L -> P^1``: zeros of the discriminant of the binary
    cubic ``t0 A + t1 B`` cutting the fibre on ``L``."""
    Sn, _ = normalize_line(S, L)
    F = S.field
    A, B = trace_forms(Sn)
    ba = BinaryForm.from_poly(A, "x1", "x2", 3)
    bb = BinaryForm.from_poly(B, "x1", "x2", 3)
    coeffs = [UniPoly(F, [b, a], "t") for a, b in zip(ba.coeffs, bb.coeffs)]
    D = binary_discriminant(coeffs, F)
    if D.is_zero():
        raise FibrationError("the map from the line to P^1 is inseparable or degenerate")
    points = []
    orders = []
    for h, m in irreducible_factors(D):
        points.append(RamificationPoint(h.monic(), h.degree, m))
        orders.extend([m] * h.degree)
    inf = 4 - D.degree
    if inf:
        points.append(RamificationPoint(None, 1, inf))
        orders.append(inf)
    rh = sum(orders)
    if rh != 4 or any(o > 2 for o in orders):
        raise FibrationError(f"ramification orders {orders} violate Riemann-Hurwitz for a 3:1 map")
    n2 = orders.count(2)
    R = {0: "1^4", 1: "2,1^2", 2: "2^2"}[n2]
    return RamificationProfile(D, points, R, rh)


# ---------------------------------------------------------------------------
# first or second kind

HESSIAN_CORNER = 2  # d^2/dx3^2 of x3^2 * A3 at x3 = 0


def segre_forms(Sn: QuarticSurface, corner: int = HESSIAN_CORNER) -> tuple[MultiPoly, MultiPoly]:
    """``(g_lam, h_lam)`` in variables ``(x1, x2, lam)`` for the planes
    ``x4 = lam * x3``: ``g`` cuts the residual cubic on the line and ``h`` is
    its Hessian determinant restricted to the line."""
    F = Sn.field
    V = ("x1", "x2", "lam")
    x1, x2, lam = (MultiPoly.var(F, V, v) for v in V)
    x3 = MultiPoly.var(F, V + ("x3",), "x3")
    big = Sn.f.compose([x1.reorder(V + ("x3",)), x2.reorder(V + ("x3",)), x3,
                        lam.reorder(V + ("x3",)) * x3])
    parts = big.coefficients_in("x3")
    zero = MultiPoly(F, V + ("x3",))
    A = {m: _drop(parts.get(m, zero), "x3", V) for m in (1, 2, 3)}
    g = A[1]
    d1 = lambda p: p.derivative("x1")
    d2 = lambda p: p.derivative("x2")
    Mx = [[d1(d1(g)), d1(d2(g)), d1(A[2])],
          [d2(d1(g)), d2(d2(g)), d2(A[2])],
          [d1(A[2]), d2(A[2]), A[3].scale(F.from_int(corner))]]
    return g, det3(Mx)


def _drop(p: MultiPoly, name: str, V) -> MultiPoly:
    i = p.vars.index(name)
    t = {}
    for e, c in p.terms.items():
        t[e[:i] + e[i + 1:]] = c
    return MultiPoly(p.field, V, t)


def segre_resultant(Sn: QuarticSurface, corner: int = HESSIAN_CORNER) -> UniPoly:
    """``r(lam) = Res_{x1}(g_lam(x1, 1), h_lam(x1, 1))`` with formal degrees 3, 3."""
    g, h = segre_forms(Sn, corner)
    F = Sn.field
    g1 = g.subs({"x2": F.one})
    h1 = h.subs({"x2": F.one})
    r = resultant_in(g1, h1, "x1", 3, 3)
    return r.reorder(("x1", "x2", "lam")).to_unipoly("lam") if not r.is_zero() else UniPoly(F, [], "lam")


def line_kind(S: QuarticSurface, L: ProjLine) -> LineKind:
    Sn, _ = normalize_line(S, L)
    r = segre_resultant(Sn)
    if r.is_zero():
        return LineKind("SECOND", r)
    if r.degree > 18:
        raise FibrationError(f"Segre resultant of degree {r.degree} > 18")
    return LineKind("FIRST", r)


# ---------------------------------------------------------------------------
# full report and audits

def analyze_line(S: QuarticSurface, L: ProjLine) -> FibrationReport:
    rep = singular_fibers(S, L)
    rep.ramification = ramification_profile(S, L)
    for f in rep.fibers:
        f.ramification = rep.ramification.order_at(f.minpoly)
    rep.kind = line_kind(S, L)
    rep.checks["euler"] = euler_audit(rep).passed
    rep.checks["ramification_consistent"] = ramification_consistency(rep).passed
    if rep.kind.kind == "SECOND":
        rep.checks["G_R"] = check_G_R(rep).passed
        rep.checks["pairing"] = pairing_audit(rep).passed
        rep.checks["flex_support"] = flex_support_audit(rep).passed
    return rep


@dataclass
class Audit:
    passed: bool
    messages: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def euler_audit(rep: FibrationReport) -> Audit:
    msgs = []
    if any(f.kind.name == "PATH" for f in rep.fibers):
        msgs.append("pathological fibre present")
    tot = rep.euler_total
    if tot != 24:
        msgs.append(f"sum of fibre Euler numbers is {tot}, not 24")
    mism = [f.t_label() for f in rep.fibers if f.euler_mismatch]
    if mism:
        msgs.append(f"discriminant order differs from Milnor number at t = {mism}")
    reducible = sum(f.conjugates for f in rep.fibers if f.kind.line_count > 0)
    i2 = sum(f.conjugates for f in rep.fibers if f.kind == I2)
    if i2 > 12:
        msgs.append(f"{i2} fibres of type I2 exceed 12")
    triples = sum(f.conjugates for f in rep.fibers if f.kind in (I3, IV))
    if rep.N > 12 and triples == 0:
        msgs.append("more than 12 incident lines but no fibre of three lines")
    if rep.N > 20:
        msgs.append(f"line meets {rep.N} > 20 lines")
    del reducible
    return Audit(not msgs, msgs)


def ramification_consistency(rep: FibrationReport) -> Audit:
    """Fibre types against ramification, for lines of the second kind:
    unramified singular fibres are I1, I3 or IV; two-preimage ramification
    gives II; one-preimage ramification gives I1, I2 or IV; III never occurs."""
    msgs = []
    if rep.kind is None or rep.kind.kind != "SECOND":
        return Audit(True, ["not a line of the second kind: no constraint"])
    allowed = {0: {I1, I3, IV}, 1: {II}, 2: {I1, I2, IV}}
    for f in rep.fibers:
        if f.kind not in allowed.get(f.ramification, set()):
            msgs.append(f"fibre {f.kind} at t = {f.t_label()} with ramification order {f.ramification}")
    if rep.ramification:
        for p in rep.ramification.points:
            if not any(f.place == p.place for f in rep.fibers):
                msgs.append("ramified point with smooth fibre")
    return Audit(not msgs, msgs)


def flex_support_audit(rep: FibrationReport) -> Audit:
    """For a line of the second kind: where the line meets a singular fibre
    it hits inflection points of the fibre or singular points, as the
    fibre type allows."""
    msgs = []
    fam, fam_inf = rep.families
    for f in rep.fibers:
        if f.t is None:
            continue
        G = f.spec.field() if f.spec.order <= TABLE_LIMIT else PolyExtensionField(f.spec)
        C = _fiber_cubic(fam_inf if f.minpoly is None else fam, f.t[1] if f.minpoly is None else f.t[0], G)
        sup = flex_support(f.kind)
        H = hessian_determinant(C, PLANE_VARS)
        grads = [C.derivative(v) for v in PLANE_VARS]
        on_line = BinaryForm.from_poly(C.subs({"s": G.zero}).reorder(("x1", "x2")), "x1", "x2", 3)
        if on_line.is_zero():
            msgs.append(f"fibre at t = {f.t_label()} contains the line")
            continue
        for (a, b), _m in on_line.roots():
            X = [a, b, G.zero]
            if all(g.evaluate(X) == G.zero for g in grads):
                if not sup.singular:
                    msgs.append(f"line meets the singular point of {f.kind} at t = {f.t_label()}")
            elif H.evaluate(X) != G.zero:
                msgs.append(f"line meets {f.kind} at t = {f.t_label()} in a non-inflection point")
    return Audit(not msgs, msgs)


def pairing_audit(rep: FibrationReport) -> Audit:
    """Semi-stable fibres pair up as (I1, I3) and (I2, I3, I3)."""
    c = rep.type_counts()
    n1, n2, n3 = c.get("I1", 0), c.get("I2", 0), c.get("I3", 0)
    ok = n3 == n1 + 2 * n2
    return Audit(ok, [] if ok else [f"#I3={n3} but #I1 + 2 #I2 = {n1 + 2 * n2}"])


def check_G_R(rep: FibrationReport) -> Audit:
    if rep.kind is None or rep.kind.kind != "SECOND":
        raise FibrationError("G_R applies to lines of the second kind only")
    R = rep.ramification.R
    msgs = []
    if rep.N not in G_R[R]:
        msgs.append(f"N = {rep.N} not in G_{R} = {sorted(G_R[R])}")
    pa = pairing_audit(rep)
    msgs.extend(pa.messages)
    if msgs:
        msgs.append("fibres: " + ", ".join(f"{f.kind}@{f.t_label()}x{f.conjugates}" for f in rep.fibers))
    return Audit(not msgs, msgs)


# ---------------------------------------------------------------------------
# the normal form x3 x1^3 + x4 x2^3 + x1 x2 q(x3, x4) + g(x3, x4)

@dataclass
class ZNormalForm:
    q: BinaryForm  # degree 2 in (x3, x4)
    g: BinaryForm  # degree 4 in (x3, x4)
    transform: list[list]  # f(T y) = c * (normal form)(y)
    scale: object


def z_normal_form(S: QuarticSurface, L: ProjLine) -> ZNormalForm:
    """Coordinates in which ``S`` takes the shape of the family, with ``L`` as
    ``x3 = x4 = 0`` and the two branch points at ``x3 = 0`` and ``x4 = 0``."""
    F = S.field
    prof = ramification_profile(S, L)
    if prof.R != "2^2":
        raise NotInFamilyZ(f"ramification type {prof.R}, need 2^2")
    pts = [p.rational_t(F) for p in prof.points]
    if len(pts) != 2 or None in pts:
        raise NotInFamilyZ("branch points are not defined over the base field; extend the field")
    Sn, M = normalize_line(S, L)
    # new x3' = 0 at the first branch plane, x4' = 0 at the second
    (a0, a1), (b0, b1) = pts
    # y3 = t0, y4 = t1 on the plane; form t1*y3 - t0*y4
    Wt = [[a1, F.neg(a0)], [b1, F.neg(b0)]]  # (x3', x4') = Wt (y3, y4)
    Winv = inverse(Wt, F)
    T1 = _block(F, [[F.one, F.zero], [F.zero, F.one]], Winv)
    S1 = Sn.transformed(T1)
    A, B = trace_forms(S1)
    # at x4' = 0 ... the trace on the line at x3 = 0 is B, at x4 = 0 it is A
    la, ca = _cube_root_form(A)
    lb, cb = _cube_root_form(B)
    if la is None or lb is None:
        raise NotInFamilyZ("trace at a branch point is not a cube of a linear form")
    # new x1' = la . (x1, x2), x2' = lb . (x1, x2)
    Wx = [list(la), list(lb)]
    try:
        Wxi = inverse(Wx, F)
    except ZeroDivisionError:
        raise NotInFamilyZ("branch points of the line coincide") from None
    T2 = _block(F, Wxi, [[F.inv(ca), F.zero], [F.zero, F.inv(cb)]])
    S2 = S1.transformed(T2)
    f2 = S2.f
    three = F.from_int(3)
    co = lambda e: f2.terms.get(e, F.zero)
    a = F.neg(F.div(co((2, 0, 2, 0)), three))
    b = F.neg(F.div(co((2, 0, 1, 1)), three))
    c = F.neg(F.div(co((0, 2, 1, 1)), three))
    d = F.neg(F.div(co((0, 2, 0, 2)), three))
    T3 = [[F.one, F.zero, a, b], [F.zero, F.one, c, d], [F.zero, F.zero, F.one, F.zero],
          [F.zero, F.zero, F.zero, F.one]]
    S3 = S2.transformed(T3)
    f3 = S3.f
    lead = f3.terms.get((3, 0, 1, 0), F.zero)
    if lead == F.zero or f3.terms.get((0, 3, 0, 1), F.zero) != lead:
        raise NotInFamilyZ("leading terms x3 x1^3, x4 x2^3 not matched")
    f3 = f3.scale(F.inv(lead))
    bad = []
    qc = [F.zero] * 3
    gc = [F.zero] * 5
    for e, cf in f3.terms.items():
        if e in ((3, 0, 1, 0), (0, 3, 0, 1)):
            continue
        if e[0] == 1 and e[1] == 1:
            qc[e[3]] = cf
        elif e[0] == 0 and e[1] == 0:
            gc[e[3]] = cf
        else:
            bad.append(e)
    if bad:
        mons = ", ".join("*".join(f"{v}^{k}" for v, k in zip(VARS, e) if k) for e in sorted(bad))
        raise NotInFamilyZ(f"monomials outside the family remain: {mons}")
    T = matmul(matmul(matmul(M, T1, F), T2, F), T3, F)
    q = BinaryForm(F, 2, qc, ("x3", "x4"))
    g = BinaryForm(F, 4, gc, ("x3", "x4"))
    return ZNormalForm(q, g, T, lead)


def _block(F, top, bottom):
    z = F.zero
    return [[top[0][0], top[0][1], z, z], [top[1][0], top[1][1], z, z],
            [z, z, bottom[0][0], bottom[0][1]], [z, z, bottom[1][0], bottom[1][1]]]


def _cube_root_form(C: MultiPoly):
    """``(l, c)`` with ``C = c * (l1 x1 + l2 x2)^3`` (``l`` normalised), or ``(None, None)``."""
    F = C.field
    bf = BinaryForm.from_poly(C, "x1", "x2", 3)
    if bf.is_zero():
        return None, None
    rts = bf.roots()
    if len(rts) != 1 or rts[0][1] != 3:
        return None, None
    (x, y), _ = rts[0]
    # root (x : y) of l1 x1 + l2 x2  ->  l = (y, -x) up to scale
    l = (y, F.neg(x))
    lead_l = l[0] if l[0] != F.zero else l[1]
    l = tuple(F.div(v, lead_l) for v in l)
    # compare coefficients: c = C / l^3 at a point where l != 0
    pt = (F.one, F.zero) if l[0] != F.zero else (F.zero, F.one)
    lv = F.add(F.mul(l[0], pt[0]), F.mul(l[1], pt[1]))
    c = F.div(bf(*pt), F.pow(lv, 3))
    return l, c
