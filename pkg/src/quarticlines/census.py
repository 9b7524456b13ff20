"""Line census over finite fields: an exhaustive oracle, a fibred solver,
tower stabilisation, the incidence graph and orbits of the order-3 symmetry."""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .algebra.fields import Field, FieldError, FieldSpec, finite_field, get_field, is_prime
from .algebra.linalg import kernel, rank, row_echelon
from .algebra.upoly import UniPoly, rational_roots_finite
from .surface import (Evaluator, ProjLine, QuarticSurface, SurfaceError, line_in_surface, line_in_surface_fast,
                      line_samples, lines_meet, normalize, plane_through)

log = logging.getLogger(__name__)

LINE_BUDGET = 80  # flecnodal divisor bound on any smooth quartic, p != 2, 3
SEGRE_BOUND = 64


class CensusError(RuntimeError):
    pass


class BudgetViolation(CensusError):
    """A count exceeded a bound that holds on every smooth quartic."""


# ---------------------------------------------------------------------------
# cells of the Grassmannian G(2,4)

CELLS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def cell_free_positions(cell: tuple[int, int]) -> tuple[list[int], list[int]]:
    """Free coordinates of the two echelon rows for pivot columns ``(i, j)``."""
    i, j = cell
    return [m for m in range(i + 1, 4) if m != j], list(range(j + 1, 4))


def grassmannian_size(q: int) -> int:
    return (q * q + 1) * (q * q + q + 1)


def _row(F: Field, pivot: int, free: Sequence[int], vals: Sequence) -> tuple:
    v = [F.zero] * 4
    v[pivot] = F.one
    for m, c in zip(free, vals):
        v[m] = c
    return tuple(v)


# ---------------------------------------------------------------------------
# results

@dataclass
class CensusResult:
    spec: FieldSpec
    lines: list[ProjLine]
    def_degree: list[int]
    count_per_level: list[int] = field(default_factory=list)
    level_degrees: list[int] = field(default_factory=list)
    stabilized: bool = False
    method: str = ""

    @property
    def count(self) -> int:
        return len(self.lines)

    @property
    def field(self) -> Field:
        return self.spec.field()

    def keys(self) -> set:
        return {L.pluecker for L in self.lines}

    def to_json(self, surface_name: str = "", graph: "IncidenceGraph | None" = None) -> dict:
        F = self.field
        out = {
            "surface": surface_name,
            "field": {"p": self.spec.p, "k": self.spec.k},
            "method": self.method,
            "stabilized": self.stabilized,
            "count": self.count,
            "count_per_level": self.count_per_level,
            "level_degrees": self.level_degrees,
            "lines": [{"pluecker": [F.fmt(c) for c in L.pluecker], "def_degree": d}
                      for L, d in zip(self.lines, self.def_degree)],
        }
        if graph is not None:
            out["graph"] = graph.to_json()
        return out


def _finish(S: QuarticSurface, found: Iterable[ProjLine], method: str) -> CensusResult:
    uniq = {L.pluecker: L for L in found}
    lines = [uniq[k] for k in sorted(uniq)]
    F = S.field
    degs = [definition_degree(L) for L in lines]
    return CensusResult(F.spec, lines, degs, [len(lines)], [F.spec.k], False, method)


def definition_degree(L: ProjLine) -> int:
    """Smallest ``k'`` such that the normalised Pluecker vector lies in F_{p^k'}."""
    F = L.field
    k = F.spec.k
    for d in range(1, k + 1):
        if k % d == 0 and all(F.in_subfield(c, d) for c in L.pluecker):
            return d
    return k  # pragma: no cover


# ---------------------------------------------------------------------------
# task runner

def run_tasks(fn: Callable, tasks: Sequence, threads: int = 1) -> list:
    """Map ``fn`` over independent tasks, in order.  ``threads > 1`` uses worker
    processes; results come back in task order either way."""
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, tasks))


# ---------------------------------------------------------------------------
# exhaustive oracle

def _brute_cell(args) -> list[ProjLine]:
    S, cell = args
    F = S.field
    i, j = cell
    fp, fq = cell_free_positions(cell)
    els = list(F.elements())
    samples = line_samples(F)
    zero = F.zero
    out = []
    Qs = [_row(F, j, fq, v) for v in itertools.product(els, repeat=len(fq))]
    Qs = [Q for Q in Qs if S(Q) == zero]
    if not Qs:
        return out
    for pv in itertools.product(els, repeat=len(fp)):
        P = _row(F, i, fp, pv)
        if S(P) != zero:
            continue
        for Q in Qs:
            if line_in_surface_fast(S, P, Q, samples):
                out.append(ProjLine.through(F, P, Q))
    return out


def enumerate_bruteforce(S: QuarticSurface, threads: int = 1) -> CensusResult:
    """Every line of ``P^3(F_q)``, cell by cell in echelon form, tested by
    evaluating ``f`` at five of its points."""
    F = S.field
    if not F.is_finite:
        raise FieldError("exhaustive census needs a finite field")
    found = []
    for part in run_tasks(_brute_cell, [(S, c) for c in CELLS], threads):
        found.extend(part)
    return _finish(S, found, "bruteforce")


# ---------------------------------------------------------------------------
# fibred solver

def _univariate_roots(F: Field, coeffs: Sequence) -> list | None:
    """Roots of ``sum c_k x^k``; ``None`` when the polynomial vanishes."""
    u = UniPoly(F, list(coeffs))
    if u.is_zero():
        return None
    return rational_roots_finite(u)


class _CellSolver:
    """Lines with echelon pivots ``(i, j)``.

    The first row ``P`` lies on the plane curve ``S ∩ {x_j = 0}`` (within the
    cell's affine chart).  For each such ``P`` the second row ``Q`` must satisfy
    the tangency condition ``grad f(P) . Q = 0`` (linear) and
    ``Q^T Hess f(P) Q = 0`` (quadratic); these cut the candidates down to
    finitely many, each confirmed on the full quartic.
    """

    def __init__(self, S: QuarticSurface, cell):
        self.S = S
        self.F = F = S.field
        self.cell = cell
        self.fp, self.fq = cell_free_positions(cell)
        self.samples = line_samples(F)
        f = S.f
        self.grad = [f.derivative(v) for v in f.vars]
        self.hess = [[g.derivative(v) for v in f.vars] for g in self.grad]
        self.grad_ev = [Evaluator(g) for g in self.grad]
        self.hess_ev = [[Evaluator(h) if not h.is_zero() else None for h in row] for row in self.hess]

    # points P of the cell on S
    def p_points(self, first_values=None) -> list[tuple]:
        F, S = self.F, self.S
        i, _ = self.cell
        fp = self.fp
        if len(fp) == 0:
            P = _row(F, i, fp, ())
            return [P] if S(P) == F.zero else []
        if len(fp) == 1:
            return [_row(F, i, fp, (c,)) for c in self._roots_on_axis(i, fp[0])]
        out = []
        vals = F.elements() if first_values is None else first_values
        for a in vals:
            base = _row(F, i, fp, (a, F.zero))
            for b in self._roots_on_axis_from(base, fp[1]):
                out.append(_row(F, i, fp, (a, b)))
        return out

    def _roots_on_axis(self, i, m):
        base = [self.F.zero] * 4
        base[i] = self.F.one
        return self._roots_on_axis_from(tuple(base), m)

    def _roots_on_axis_from(self, base, m):
        """Values ``c`` with ``f(base + c e_m) = 0``; all field elements if the
        restriction vanishes identically."""
        F = self.F
        coeffs = _restrict_coeffs(self.S, base, m)
        r = _univariate_roots(F, coeffs)
        return list(F.elements()) if r is None else r

    def lines(self, first_values=None) -> list[ProjLine]:
        F, S = self.F, self.S
        _, j = self.cell
        out = []
        for P in self.p_points(first_values):
            g = [ev(P) for ev in self.grad_ev]
            H = [[ev(P) if ev is not None else F.zero for ev in row] for row in self.hess_ev]
            for Q in self._q_candidates(P, g, H):
                if line_in_surface_fast(S, P, Q, self.samples):
                    out.append(ProjLine.through(F, P, Q))
        return out

    def _q_candidates(self, P, g, H):
        F = self.F
        _, j = self.cell
        fq = self.fq
        add, mul, sub = F.add, F.mul, F.sub
        # affine space Q = B0 + sum_r c_r B_r satisfying g.Q = 0
        B0 = [F.zero] * 4
        B0[j] = F.one
        dirs = []
        for m in fq:
            e = [F.zero] * 4
            e[m] = F.one
            dirs.append(e)
        dot = lambda u, v: _dot(F, u, v)
        g0 = dot(g, B0)
        gd = [dot(g, d) for d in dirs]
        if dirs:
            piv = next((r for r in range(len(dirs)) if gd[r] != F.zero), None)
        else:
            piv = None
        if piv is None:
            if g0 != F.zero:
                return []
            base, basis = B0, dirs
        else:
            s = F.neg(F.div(g0, gd[piv]))
            base = [add(b, mul(s, d)) for b, d in zip(B0, dirs[piv])]
            basis = []
            for r, d in enumerate(dirs):
                if r == piv:
                    continue
                s = F.neg(F.div(gd[r], gd[piv]))
                basis.append([add(a, mul(s, b)) for a, b in zip(d, dirs[piv])])
        quad = lambda u, v: dot(u, [dot(row, v) for row in H])
        if not basis:
            return [tuple(base)]
        if len(basis) == 1:
            return [tuple(add(b, mul(c, d)) for b, d in zip(base, basis[0]))
                    for c in self._quad_roots(quad, base, basis[0])]
        out = []
        for c in F.elements():
            b1 = [add(b, mul(c, d)) for b, d in zip(base, basis[0])]
            for c2 in self._quad_roots(quad, b1, basis[1]):
                out.append(tuple(add(b, mul(c2, d)) for b, d in zip(b1, basis[1])))
        return out

    def _quad_roots(self, quad, b, d):
        F = self.F
        c0 = quad(b, b)
        c1 = F.add(quad(b, d), quad(d, b))
        c2 = quad(d, d)
        r = _univariate_roots(F, [c0, c1, c2])
        return list(F.elements()) if r is None else r


def _dot(F, u, v):
    acc = F.zero
    for a, b in zip(u, v):
        if a != F.zero and b != F.zero:
            acc = F.add(acc, F.mul(a, b))
    return acc


def _restrict_coeffs(S: QuarticSurface, base: Sequence, m: int) -> list:
    """Coefficients (low first) of ``c -> f(base + c e_m)``."""
    F = S.field
    coeffs = [F.zero] * 5
    for e, c in S.f.terms.items():
        v = c
        for idx in range(4):
            if idx == m:
                continue
            k = e[idx]
            if k:
                x = base[idx]
                if x == F.zero:
                    v = F.zero
                    break
                v = F.mul(v, F.pow(x, k))
        if v == F.zero:
            continue
        k = e[m]
        if base[m] != F.zero:
            # expand (base_m + c)^k
            from math import comb
            for t in range(k + 1):
                coeffs[t] = F.add(coeffs[t], F.mul(v, F.mul(F.from_int(comb(k, t)), F.pow(base[m], k - t))))
        else:
            coeffs[k] = F.add(coeffs[k], v)
    return coeffs


def _solve_cell(args) -> list[ProjLine]:
    S, cell, chunk = args
    return _CellSolver(S, cell).lines(chunk)


def enumerate_elimination(S: QuarticSurface, threads: int = 1, confirm: bool = True) -> CensusResult:
    """Lines via the fibred solver; every survivor is re-confirmed by expanding
    ``f`` along the line (``confirm``)."""
    F = S.field
    if not F.is_finite:
        raise FieldError("census needs a finite field; reduce modulo a prime first")
    tasks = []
    els = list(F.elements())
    nchunks = max(1, threads)
    for cell in CELLS:
        if len(cell_free_positions(cell)[0]) == 2 and nchunks > 1:
            step = -(-len(els) // nchunks)
            for s in range(0, len(els), step):
                tasks.append((S, cell, els[s:s + step]))
        else:
            tasks.append((S, cell, None))
    found = []
    for part in run_tasks(_solve_cell, tasks, threads):
        found.extend(part)
    if confirm:
        bad = [L for L in found if not line_in_surface(S, L)]
        if bad:  # pragma: no cover - the point test on 5 points is exact
            raise CensusError(f"candidate {bad[0]} failed confirmation")
    return _finish(S, found, "elimination")


# ---------------------------------------------------------------------------
# tower stabilisation

def tower_degrees(base_k: int, K: int) -> list[int]:
    """Level ``m`` works over ``F_{p^(base_k * 2^(m-1))}``: a divisibility chain,
    so line sets only grow along the tower."""
    return [base_k * 2 ** m for m in range(K)]


def stabilized_count(S: QuarticSurface, K: int = 4, threads: int = 1, method: str = "elimination",
                     max_order: int = 1 << 21, start_k: int | None = None) -> CensusResult:
    """Census along the tower until two consecutive levels agree.

    Levels whose field would exceed ``max_order`` elements are skipped and the
    result is left unstabilised.  A count above 80 raises
    :class:`BudgetViolation`.
    """
    F = S.field
    if not F.is_finite:
        raise FieldError("stabilisation needs a finite base field")
    p = F.spec.p
    k0 = start_k or F.spec.k
    enum = enumerate_elimination if method == "elimination" else enumerate_bruteforce
    counts, degs = [], []
    last = None
    for k in tower_degrees(k0, K):
        if p ** k > max_order:
            log.info("level F_%d^%d skipped: field too large", p, k)
            break
        G = finite_field(p, k)
        res = enum(S.over(G), threads=threads)
        counts.append(res.count)
        degs.append(k)
        if res.count > LINE_BUDGET and p >= 5:  # the flecnodal bound needs p != 2, 3
            raise BudgetViolation(f"{res.count} lines over F_{p}^{k} exceed the flecnodal budget of 80")
        if last is not None and res.count == last.count:
            res.count_per_level, res.level_degrees, res.stabilized = counts, degs, True
            res.method = method
            return res
        last = res
    if last is None:
        raise CensusError("no tower level fits under max_order")
    last.count_per_level, last.level_degrees, last.stabilized = counts, degs, False
    return last


@dataclass
class CharZeroCount:
    count: int | None
    per_prime: dict[int, CensusResult]
    agree: bool
    note: str = ""


def char0_count(S: QuarticSurface, primes: Sequence[int], K: int = 2, threads: int = 1) -> CharZeroCount:
    """Count lines of a rational quartic by stabilised counts at several primes;
    disagreement is reported, never resolved."""
    if S.field.is_finite:
        raise FieldError("surface is already over a finite field")
    if len(primes) < 3:
        raise ValueError("need at least three primes")
    per = {}
    for p in primes:
        if not is_prime(p) or p < 5:
            raise FieldError(f"{p} is not a prime >= 5")
        try:
            Sp = S.over(finite_field(p))
        except (FieldError, ZeroDivisionError):
            continue
        per[p] = stabilized_count(Sp, K=K, threads=threads)
    counts = {r.count for r in per.values() if r.stabilized}
    if len(counts) == 1 and all(r.stabilized for r in per.values()) and len(per) >= 3:
        return CharZeroCount(counts.pop(), per, True)
    return CharZeroCount(None, per, False, "bad reduction suspected")


# ---------------------------------------------------------------------------
# incidence graph

@dataclass
class PlanarGroup:
    pivot: int
    plane: tuple
    members: list[int]
    shape: str  # triangle | star | single | other


@dataclass
class IncidenceGraph:
    lines: list[ProjLine]
    edges: set[tuple[int, int]]
    meet_points: dict[tuple[int, int], tuple]
    groups: list[PlanarGroup]

    def neighbors(self, i: int) -> list[int]:
        return sorted({b if a == i else a for a, b in self.edges if i in (a, b)})

    @property
    def degrees(self) -> list[int]:
        d = [0] * len(self.lines)
        for a, b in self.edges:
            d[a] += 1
            d[b] += 1
        return d

    def triples(self, i: int | None = None) -> list[PlanarGroup]:
        return [g for g in self.groups if len(g.members) == 3 and (i is None or g.pivot == i)]

    def to_json(self) -> dict:
        return {
            "degrees": self.degrees,
            "triples": [{"pivot": g.pivot, "members": g.members, "shape": g.shape}
                        for g in self.groups if len(g.members) == 3],
        }


def incidence_graph(census: CensusResult) -> IncidenceGraph:
    """Meeting relation plus, per pivot line, its neighbours grouped by the
    plane they span with it; groups of three are triangles (three distinct
    meeting points) or stars (concurrent)."""
    lines = census.lines
    n = len(lines)
    edges, pts = set(), {}
    for a in range(n):
        for b in range(a + 1, n):
            kind, X = lines_meet(lines[a], lines[b])
            if kind == "point":
                edges.add((a, b))
                pts[(a, b)] = X
    groups = []
    F = census.field
    for i in range(n):
        byplane: dict[tuple, list[int]] = {}
        for a, b in sorted(edges):
            if i not in (a, b):
                continue
            j = b if a == i else a
            Lj = lines[j]
            X = next(v for v in Lj.basis if not lines[i].contains_point(v))
            byplane.setdefault(plane_through(lines[i], X), []).append(j)
        for plane in sorted(byplane):
            mem = byplane[plane]
            if len(mem) == 3:
                a, b, c = mem
                pab = pts[tuple(sorted((a, b)))] if tuple(sorted((a, b))) in pts else None
                pac = pts.get(tuple(sorted((a, c))))
                pbc = pts.get(tuple(sorted((b, c))))
                shape = "star" if pab is not None and pab == pac == pbc else "triangle"
            elif len(mem) == 1:
                shape = "single"
            else:
                shape = "other"
            groups.append(PlanarGroup(i, plane, mem, shape))
    return IncidenceGraph(lines, edges, pts, groups)


# ---------------------------------------------------------------------------
# the order-3 symmetry diag(rho, rho^2, 1, 1)

def cube_root_of_unity(F: Field):
    for c in F.elements():
        if c not in (F.zero, F.one) and F.pow(c, 3) == F.one:
            return c
    raise FieldError(f"{F.spec} contains no primitive cube root of unity")


def sigma_matrix(F: Field) -> list[list]:
    rho = cube_root_of_unity(F)
    z = F.zero
    return [[rho, z, z, z], [z, F.mul(rho, rho), z, z], [z, z, F.one, z], [z, z, z, F.one]]


def sigma_orbits(S: QuarticSurface, census: CensusResult) -> list[list[int]]:
    """Orbits of ``sigma: [rho x1, rho^2 x2, x3, x4]`` on the census lines."""
    F = census.field
    M = sigma_matrix(F)
    if S.f.linear_substitution(M, S.f.vars) != S.f:
        raise CensusError("surface is not invariant under sigma")
    index = {L.pluecker: n for n, L in enumerate(census.lines)}
    seen, orbits = set(), []
    for n, L in enumerate(census.lines):
        if n in seen:
            continue
        orb = [n]
        cur = L.transform(M)
        while cur.pluecker != L.pluecker:
            m = index.get(cur.pluecker)
            if m is None:
                raise CensusError("census is not closed under sigma")
            orb.append(m)
            cur = cur.transform(M)
        seen.update(orb)
        orbits.append(sorted(orb))
    return orbits
