"""Quartic surfaces in P^3, points, lines, the pencil of planes through a line
and the residual cubics it cuts out."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra.fields import Field, FieldEmbedding, FieldError, FieldSpec, finite_field, get_field, is_prime
from .algebra.linalg import determinant, inverse, kernel, rank, row_echelon
from .algebra.mpoly import MultiPoly

VARS = ("x1", "x2", "x3", "x4")
PLANE_VARS = ("x1", "x2", "s")


class SurfaceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# fast evaluation

class Evaluator:
    """Evaluate a fixed polynomial at many points.

    Over prime fields the polynomial is compiled to one integer expression
    reduced mod p at the end; otherwise field ops are used term by term.
    """

    def __init__(self, f: MultiPoly):
        self.field = F = f.field
        self.nvars = len(f.vars)
        self._terms = list(f.terms.items())
        self._fn = None
        if F.is_finite and F.spec.k == 1:
            args = [f"a{i}" for i in range(self.nvars)]
            parts = []
            for e, c in self._terms:
                mon = "*".join(f"{a}**{k}" if k > 1 else a for a, k in zip(args, e) if k)
                parts.append(f"{c}*{mon}" if mon else str(c))
            body = " + ".join(parts) if parts else "0"
            self._fn = eval(f"lambda {', '.join(args)}: ({body}) % {F.spec.p}")  # noqa: S307

    def __call__(self, pt: Sequence):
        if self._fn is not None:
            return self._fn(*pt)
        F = self.field
        acc = F.zero
        mul, add = F.mul, F.add
        for e, c in self._terms:
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = mul(v, F.pow(x, k) if k > 1 else x)
                    if v == 0:
                        break
            acc = add(acc, v)
        return acc


# ---------------------------------------------------------------------------
# points and lines

def normalize(F: Field, v: Sequence) -> tuple:
    """Scale so that the first nonzero coordinate is 1."""
    z = F.zero
    for c in v:
        if c != z:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in v)
    raise SurfaceError("zero vector is not a projective point")


@dataclass(frozen=True)
class ProjPoint:
    spec: FieldSpec
    coords: tuple

    @classmethod
    def of(cls, field, coords: Sequence) -> "ProjPoint":
        F = get_field(field)
        return cls(F.spec, normalize(F, [F.convert(c) if not isinstance(c, int) or F.spec.k == 1 else c for c in coords]))

    @classmethod
    def raw(cls, field, coords: Sequence) -> "ProjPoint":
        F = get_field(field)
        return cls(F.spec, normalize(F, coords))

    @property
    def field(self) -> Field:
        return self.spec.field()

    def __str__(self):
        F = self.field
        return "(" + ":".join(F.fmt(c) for c in self.coords) + ")"


PLUECKER_INDEX = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True, eq=False)
class ProjLine:
    """A line of P^3 as the row-reduced echelon basis of its 2x4 matrix.

    ``pluecker`` is normalised (first nonzero coordinate 1) in the order
    p12, p13, p14, p23, p24, p34; it is the identity of the line.  ``chart``
    records the pivot columns of the echelon basis.
    """

    spec: FieldSpec
    basis: tuple[tuple, tuple]
    pluecker: tuple
    chart: tuple[int, int]

    @classmethod
    def through(cls, field, P: Sequence, Q: Sequence) -> "ProjLine":
        F = get_field(field)
        R, piv = row_echelon([list(P), list(Q)], F)
        if len(piv) != 2:
            raise SurfaceError("points do not span a line")
        basis = (tuple(R[0]), tuple(R[1]))
        pl = []
        for i, j in PLUECKER_INDEX:
            pl.append(F.sub(F.mul(R[0][i], R[1][j]), F.mul(R[0][j], R[1][i])))
        pl = normalize(F, pl)
        rel = F.add(F.sub(F.mul(pl[0], pl[5]), F.mul(pl[1], pl[4])), F.mul(pl[2], pl[3]))
        assert rel == F.zero, "Pluecker relation violated"
        return cls(F.spec, basis, pl, (piv[0], piv[1]))

    @classmethod
    def from_equations(cls, field, eqs: Sequence[Sequence]) -> "ProjLine":
        """Line cut out by two independent linear forms."""
        F = get_field(field)
        K = kernel([list(e) for e in eqs], F)
        if len(K) != 2:
            raise SurfaceError("equations do not cut out a line")
        return cls.through(F, K[0], K[1])

    @property
    def field(self) -> Field:
        return self.spec.field()

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.spec == other.spec and self.pluecker == other.pluecker

    def __hash__(self):
        return hash((self.spec, self.pluecker))

    def key(self) -> tuple:
        return self.pluecker

    def points(self) -> Iterator[tuple]:
        """All F-rational points (finite fields only), not normalised."""
        F = self.field
        P, Q = self.basis
        yield Q
        for u in F.elements():
            yield tuple(F.add(p, F.mul(u, q)) for p, q in zip(P, Q))

    def point(self, s, u) -> tuple:
        F = self.field
        P, Q = self.basis
        return tuple(F.add(F.mul(s, p), F.mul(u, q)) for p, q in zip(P, Q))

    def contains_point(self, X: Sequence) -> bool:
        return rank([list(self.basis[0]), list(self.basis[1]), list(X)], self.field) == 2

    def map(self, fn, field: Field) -> "ProjLine":
        """Image under a coordinatewise field map (e.g. an embedding)."""
        P, Q = self.basis
        return ProjLine.through(field, [fn(c) for c in P], [fn(c) for c in Q])

    def transform(self, M: Sequence[Sequence]) -> "ProjLine":
        """Image under the projective map ``x -> M x``."""
        F = self.field
        P, Q = self.basis
        mv = lambda v: [sum_f(F, (F.mul(M[i][j], v[j]) for j in range(4))) for i in range(4)]
        return ProjLine.through(F, mv(P), mv(Q))

    def __str__(self):
        F = self.field
        return "[" + ",".join(F.fmt(c) for c in self.pluecker) + "]"

    def describe(self) -> str:
        F = self.field
        P, Q = self.basis
        f = lambda v: "(" + ":".join(F.fmt(c) for c in v) + ")"
        return f"span{{{f(P)}, {f(Q)}}}"


def sum_f(F: Field, it):
    acc = F.zero
    for v in it:
        acc = F.add(acc, v)
    return acc


# ---------------------------------------------------------------------------
# surfaces

@dataclass
class QuarticSurface:
    """``S = {f = 0}`` for a homogeneous quartic ``f`` in x1..x4."""

    f: MultiPoly
    name: str = ""
    smoothness: str = "unverified"  # smooth | singular | unverified

    def __post_init__(self):
        if self.f.vars != VARS:
            self.f = self.f.reorder(VARS)
        if self.f.is_zero():
            raise SurfaceError("the zero polynomial defines no surface")
        if not self.f.is_homogeneous(4):
            raise SurfaceError("f must be homogeneous of degree 4")
        self._eval = None
        self._grad = None

    def __getstate__(self):
        d = dict(self.__dict__)
        d["_eval"] = d["_grad"] = None  # compiled evaluators do not pickle
        return d

    @property
    def field(self) -> Field:
        return self.f.field

    @property
    def spec(self) -> FieldSpec:
        return self.f.field.spec

    def __call__(self, pt):
        if self._eval is None:
            self._eval = Evaluator(self.f)
        return self._eval(pt)

    def gradient_evaluators(self) -> list[Evaluator]:
        if self._grad is None:
            self._grad = [Evaluator(self.f.derivative(v)) for v in VARS]
        return self._grad

    def gradient(self, pt) -> list:
        return [g(pt) for g in self.gradient_evaluators()]

    def contains_point(self, pt) -> bool:
        return self(pt) == self.field.zero

    def over(self, field) -> "QuarticSurface":
        """Same equation read in another field.

        Rationals reduce to ``F_p`` (denominators must be units); ``F_{p^a}``
        embeds into ``F_{p^b}`` when ``a | b``.
        """
        G = get_field(field)
        F = self.field
        if F.spec == G.spec:
            return self
        if not F.is_finite:
            if not G.is_finite:
                return self
            terms = {e: G.convert(c) for e, c in self.f.terms.items()}
        else:
            emb = FieldEmbedding(F, G)
            terms = {e: emb(c) for e, c in self.f.terms.items()}
        out = QuarticSurface(MultiPoly(G, VARS, terms), self.name)
        return out

    def transformed(self, M: Sequence[Sequence]) -> "QuarticSurface":
        """``f(M y)`` as a surface in the y coordinates."""
        return QuarticSurface(self.f.linear_substitution(M, VARS), self.name)

    def __str__(self):
        return str(self.f)


def projective_points(F: Field, n: int = 4) -> Iterator[tuple]:
    """Normalised points of P^{n-1}(F)."""
    els = list(F.elements())
    one, zero = F.one, F.zero
    for lead in range(n):
        rest = n - lead - 1
        for tail in itertools.product(els, repeat=rest):
            yield (zero,) * lead + (one,) + tail


# ---------------------------------------------------------------------------
# containment

def restrict_to_line(S: QuarticSurface, L: ProjLine) -> list:
    """Coefficients of the binary quartic ``f(a P + b Q)`` (a^4 first)."""
    F = S.field
    P, Q = L.basis
    a, b = MultiPoly.var(F, ("a", "b"), "a"), MultiPoly.var(F, ("a", "b"), "b")
    images = []
    for i in range(4):
        images.append(a * MultiPoly.const(F, ("a", "b"), P[i]) + b * MultiPoly.const(F, ("a", "b"), Q[i]))
    g = S.f.compose(images)
    return [g.terms.get((4 - i, i), F.zero) for i in range(5)]


def line_in_surface(S: QuarticSurface, L: ProjLine) -> bool:
    """True iff all five coefficients of ``f(aP + bQ)`` vanish."""
    if S.spec != L.spec:
        raise FieldError("surface and line live over different fields")
    return all(c == S.field.zero for c in restrict_to_line(S, L))


def line_in_surface_fast(S: QuarticSurface, P: Sequence, Q: Sequence, samples: Sequence) -> bool:
    """Same test via vanishing at five distinct points of the line:
    ``Q`` and ``P + u Q`` for the four values in ``samples``."""
    F = S.field
    if S(Q) != F.zero:
        return False
    add, mul = F.add, F.mul
    for u in samples:
        if S(tuple(add(p, mul(u, q)) for p, q in zip(P, Q))) != F.zero:
            return False
    return True


def line_samples(F: Field) -> list:
    """Four distinct field values (0 first) for :func:`line_in_surface_fast`."""
    out = []
    for c in F.elements():
        out.append(c)
        if len(out) == 4:
            return out
    raise FieldError("field too small")


# ---------------------------------------------------------------------------
# smoothness

@dataclass
class SmoothnessReport:
    status: str  # smooth | singular | unverified
    witness: tuple | None = None
    witness_field: FieldSpec | None = None
    levels: list[int] = field(default_factory=list)
    evidence: list[tuple[int, str]] = field(default_factory=list)

    def describe(self) -> str:
        if self.status == "singular":
            F = self.witness_field.field()
            return "singular at (" + ":".join(F.fmt(c) for c in self.witness) + f") over {self.witness_field}"
        if self.levels:
            return f"smooth up to F_{{p^{max(self.levels)}}}"
        if self.evidence:
            return "unverified over Q; reductions: " + ", ".join(f"p={p}: {s}" for p, s in self.evidence)
        return self.status


def singular_points(S: QuarticSurface, limit: int | None = None) -> list[tuple]:
    """All F-rational singular points (exhaustive scan of P^3(F))."""
    F = S.field
    grads = S.gradient_evaluators()
    out = []
    for pt in projective_points(F):
        if S(pt) != F.zero:
            continue
        if all(g(pt) == F.zero for g in grads):
            out.append(pt)
            if limit and len(out) >= limit:
                break
    return out


def smoothness_check(S: QuarticSurface, tower_bound: int = 1, primes: Sequence[int] = (7, 11, 13)) -> SmoothnessReport:
    """Scan ``P^3(F_{p^m})``, ``m = 1..K``, for common zeros of f and its partials.

    Over the rationals, the reductions modulo ``primes`` are scanned instead
    and the result stays ``unverified`` (evidence only).
    """
    F = S.field
    if not F.is_finite:
        rep = SmoothnessReport("unverified")
        for p in primes:
            try:
                Sp = S.over(FieldSpec.prime(p).field())
            except FieldError:
                rep.evidence.append((p, "bad prime (denominator)"))
                continue
            r = smoothness_check(Sp, 1)
            rep.evidence.append((p, r.status))
        return rep
    p, k = F.spec.p, F.spec.k
    if F.spec.k != 1 and tower_bound > 1:
        levels = [k * m for m in range(1, tower_bound + 1)]
    else:
        levels = [k * m for m in range(1, tower_bound + 1)]
    rep = SmoothnessReport("smooth")
    for deg in levels:
        G = finite_field(p, deg)
        Sg = S.over(G)
        sing = singular_points(Sg, limit=1)
        if sing:
            S.smoothness = "singular"
            return SmoothnessReport("singular", sing[0], G.spec, rep.levels)
        rep.levels.append(deg)
    S.smoothness = "smooth"
    return rep


# ---------------------------------------------------------------------------
# frames, pencils and residual cubics

def line_frame(L: ProjLine) -> list[list]:
    """4x4 matrix whose columns are the echelon basis ``P, Q`` of ``L`` followed
    by the first two standard basis vectors completing it to a basis."""
    F = L.field
    P, Q = L.basis
    cols = [list(P), list(Q)]
    for i in range(4):
        e = [F.zero] * 4
        e[i] = F.one
        if rank(cols + [e], F) == len(cols) + 1:
            cols.append(e)
        if len(cols) == 4:
            break
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def normalize_line(S: QuarticSurface, L: ProjLine) -> tuple[QuarticSurface, list[list]]:
    """Move ``L`` to ``{x3 = x4 = 0}``: returns ``(S', M)`` with ``f'(y) = f(M y)``."""
    if not line_in_surface(S, L):
        raise SurfaceError("line is not contained in the surface")
    M = line_frame(L)
    return S.transformed(M), M


@dataclass(frozen=True)
class PencilPlane:
    """The plane ``H_t`` of the pencil through ``line``.

    In the frame of :func:`line_frame` (where the line is ``y3 = y4 = 0``),
    ``t = (t0 : t1)`` is the ratio ``(y3 : y4)`` of the points of ``H_t``,
    i.e. ``H_t = {t1 y3 - t0 y4 = 0}``; ``t = (0:1)`` is ``y3 = 0`` and
    ``t = (1:0)`` is ``y4 = 0``.
    """

    line: ProjLine
    t: tuple
    form: tuple  # linear form in the original coordinates

    @classmethod
    def at(cls, L: ProjLine, t: Sequence) -> "PencilPlane":
        F = L.field
        t0, t1 = t
        if t0 == F.zero and t1 == F.zero:
            raise SurfaceError("(0:0) is not a point of P^1")
        Minv = inverse(line_frame(L), F)
        form = tuple(F.sub(F.mul(t1, Minv[2][j]), F.mul(t0, Minv[3][j])) for j in range(4))
        P, Q = L.basis
        for X in (P, Q):
            assert sum_f(F, (F.mul(a, b) for a, b in zip(form, X))) == F.zero
        return cls(L, (t0, t1), form)


def residual_cubic(S: QuarticSurface, L: ProjLine, t: Sequence) -> MultiPoly:
    """``Gamma_t``: the plane cubic with ``f|_{H_t} = s * Gamma_t``.

    Plane coordinates ``(x1, x2, s)`` stand for the point
    ``x1 P + x2 Q + s (t0 E_a + t1 E_b)`` where ``P, Q, E_a, E_b`` are the
    columns of :func:`line_frame`; the line itself is ``s = 0``.
    """
    Sn, _ = normalize_line(S, L)
    F = S.field
    t0, t1 = t
    V = PLANE_VARS
    x1, x2, s = (MultiPoly.var(F, V, v) for v in V)
    restricted = Sn.f.compose([x1, x2, s.scale(t0), s.scale(t1)])
    try:
        return restricted.exquo(s)
    except ArithmeticError as exc:  # pragma: no cover - guarded by normalize_line
        raise SurfaceError("restriction is not divisible by the line") from exc


def residual_cubic_family(Sn: QuarticSurface) -> MultiPoly:
    """For a surface already normalised so that the line is ``x3 = x4 = 0``:
    ``Gamma_t`` with ``(t0, t1) = (t, 1)`` as one polynomial in x1, x2, s, t."""
    F = Sn.field
    V = PLANE_VARS + ("t",)
    x1, x2, s, t = (MultiPoly.var(F, V, v) for v in V)
    restricted = Sn.f.compose([x1, x2, t * s, s])
    return restricted.exquo(s)


def lines_meet(L1: ProjLine, L2: ProjLine):
    """``("disjoint", None)``, ``("point", P)`` or ``("equal", None)``."""
    if L1.spec != L2.spec:
        raise FieldError("lines over different fields")
    F = L1.field
    rows = [list(L1.basis[0]), list(L1.basis[1]), list(L2.basis[0]), list(L2.basis[1])]
    r = rank(rows, F)
    if r == 4:
        return "disjoint", None
    if r == 2:
        return "equal", None
    cols = [[rows[j][i] for j in range(4)] for i in range(4)]
    ker = kernel(cols, F)
    a, b = ker[0][0], ker[0][1]
    P, Q = L1.basis
    X = tuple(F.add(F.mul(a, p), F.mul(b, q)) for p, q in zip(P, Q))
    return "point", normalize(F, X)


def plane_through(L: ProjLine, X: Sequence) -> tuple:
    """Normalised linear form of the plane spanned by ``L`` and a point off it."""
    F = L.field
    K = kernel([list(L.basis[0]), list(L.basis[1]), list(X)], F)
    if len(K) != 1:
        raise SurfaceError("point lies on the line")
    return normalize(F, K[0])


def coplanar(L1: ProjLine, L2: ProjLine) -> bool:
    return lines_meet(L1, L2)[0] != "disjoint"
