"""Sparse multivariate polynomials, elimination by Sylvester resultants,
binary forms and the Hessian determinant of ternary cubics."""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

from .fields import Field, FieldError, get_field
from .linalg import bareiss_determinant, determinant
from .upoly import UniPoly, sylvester_matrix

Exp = tuple[int, ...]


class MultiPoly:
    """``{exponent vector: raw coefficient}`` over ordered variable names.

    Zero coefficients are never stored.  Homogeneity is a predicate.
    """

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        F = get_field(field)
        self.field = F
        self.vars = tuple(variables)
        z = F.zero
        n = len(self.vars)
        t = {}
        for e, c in (terms or {}).items():
            if c != z:
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                t[tuple(e)] = c
        self.terms = t

    # construction ---------------------------------------------------------
    @classmethod
    def var(cls, field, variables: Sequence[str], name: str) -> "MultiPoly":
        F = get_field(field)
        e = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name}")
        return cls(F, variables, {e: F.one})

    @classmethod
    def const(cls, field, variables: Sequence[str], c) -> "MultiPoly":
        F = get_field(field)
        return cls(F, variables, {(0,) * len(variables): c})

    def _new(self, terms) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.field = self.field
        out.vars = self.vars
        z = self.field.zero
        out.terms = {e: c for e, c in terms.items() if c != z}
        return out

    def gens(self) -> list["MultiPoly"]:
        return [MultiPoly.var(self.field, self.vars, v) for v in self.vars]

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None, among: Sequence[str] | None = None) -> bool:
        idx = range(len(self.vars)) if among is None else [self.vars.index(v) for v in among]
        degs = {sum(e[i] for i in idx) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def used_vars(self) -> set[str]:
        return {v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)}

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if self.field.spec != other.field.spec:
                return False
            if self.vars != other.vars:
                other = other.reorder(self.vars)
            return self.terms == other.terms
        if self.is_zero():
            return other == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return format_poly(self)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field.spec != self.field.spec:
                raise FieldError(f"mixed fields {self.field.spec} and {other.field.spec}")
            if other.vars != self.vars:
                other = other.reorder(self.vars)
            return other
        return MultiPoly.const(self.field, self.vars, self.field.convert(other))

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = F.add(t[e], c) if e in t else c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, MultiPoly):
            c = F.convert(other)
            return self._new({e: F.mul(c, v) for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        add, mul = F.add, F.mul
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = mul(c1, c2)
                t[e] = add(t[e], v) if e in t else v
        return self._new(t)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        F = self.field
        return self._new({e: F.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        result = MultiPoly.const(self.field, self.vars, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def leading_term(self) -> tuple[Exp, object]:
        e = max(self.terms)
        return e, self.terms[e]

    def exquo(self, other: "MultiPoly") -> "MultiPoly":
        """Exact division (lex order); raises if the remainder is nonzero."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        le, lc = other.leading_term()
        inv = F.inv(lc)
        rem = dict(self.terms)
        quo: dict = {}
        oterms = list(other.terms.items())
        while rem:
            e = max(rem)
            c = rem[e]
            d = tuple(a - b for a, b in zip(e, le))
            if min(d) < 0:
                raise ArithmeticError("inexact multivariate division")
            f = F.mul(c, inv)
            quo[d] = f
            for eo, co in oterms:
                ee = tuple(a + b for a, b in zip(eo, d))
                v = F.sub(rem.get(ee, F.zero), F.mul(f, co))
                if v == F.zero:
                    rem.pop(ee, None)
                else:
                    rem[ee] = v
        return self._new(quo)

    # calculus and substitution -------------------------------------------
    def derivative(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        F = self.field
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                t[ne] = F.mul(F.from_int(e[i]), c)
        return self._new(t)

    def evaluate(self, point: Sequence):
        """Value at a full point (raw values, one per variable)."""
        F = self.field
        n = len(self.vars)
        maxdeg = [0] * n
        for e in self.terms:
            for i in range(n):
                if e[i] > maxdeg[i]:
                    maxdeg[i] = e[i]
        pows = []
        for i in range(n):
            row = [F.one]
            for _ in range(maxdeg[i]):
                row.append(F.mul(row[-1], point[i]))
            pows.append(row)
        acc = F.zero
        for e, c in self.terms.items():
            v = c
            for i in range(n):
                if e[i]:
                    v = F.mul(v, pows[i][e[i]])
            acc = F.add(acc, v)
        return acc

    __call__ = evaluate

    def subs(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Substitute raw values for some variables (variables are kept)."""
        F = self.field
        idx = {self.vars.index(k): v for k, v in assignment.items()}
        t: dict = {}
        for e, c in self.terms.items():
            v = c
            ne = list(e)
            for i, val in idx.items():
                if e[i]:
                    v = F.mul(v, F.pow(val, e[i]))
                    ne[i] = 0
            ne = tuple(ne)
            t[ne] = F.add(t[ne], v) if ne in t else v
        return self._new(t)

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute a polynomial for every variable (all images share vars)."""
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        target = images[0]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        acc = MultiPoly(self.field, target.vars)
        for e, c in self.terms.items():
            term = MultiPoly.const(self.field, target.vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def linear_substitution(self, matrix: Sequence[Sequence], new_vars: Sequence[str]) -> "MultiPoly":
        """``f(M y)``: old variable i becomes ``sum_j M[i][j] y_j``."""
        F = self.field
        images = []
        for row in matrix:
            t = {}
            for j, c in enumerate(row):
                if c != F.zero:
                    e = [0] * len(new_vars)
                    e[j] = 1
                    t[tuple(e)] = c
            images.append(MultiPoly(F, new_vars, t))
        return self.compose(images)

    def reorder(self, new_vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``new_vars`` (must contain every used variable)."""
        new_vars = tuple(new_vars)
        pos = []
        for i, v in enumerate(self.vars):
            if v in new_vars:
                pos.append(new_vars.index(v))
            else:
                pos.append(None)
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.vars[i]} not in {new_vars}")
                    ne[pos[i]] = k
            t[tuple(ne)] = c
        out = MultiPoly.__new__(MultiPoly)
        out.field, out.vars, out.terms = self.field, new_vars, t
        return out

    def coefficients_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_k c_k * name^k`` (coefficients keep all variables)."""
        i = self.vars.index(name)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: self._new(t) for k, t in out.items()}

    def to_unipoly(self, name: str | None = None) -> UniPoly:
        used = self.used_vars()
        if name is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: {sorted(used)}")
            name = next(iter(used)) if used else self.vars[0]
        if used - {name}:
            raise ValueError(f"not univariate in {name}")
        i = self.vars.index(name)
        deg = self.degree_in(name)
        cs = [self.field.zero] * (deg + 1)
        for e, c in self.terms.items():
            cs[e[i]] = c
        return UniPoly(self.field, cs, name)

    def content_free(self) -> "MultiPoly":
        """Over the rationals: divide out the rational content so that the
        coefficients become coprime integers with a positive leading one.
        Over finite fields: make the leading coefficient 1."""
        if self.is_zero():
            return self
        F = self.field
        if F.is_finite:
            return self.scale(F.inv(self.leading_term()[1]))
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // igcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = igcd(num, int(c * den))
        s = Fraction(den, num)
        if self.leading_term()[1] < 0:
            s = -s
        return self.scale(s)


def format_poly(f: MultiPoly) -> str:
    F = f.field
    if not f.terms:
        return "0"
    parts = []
    for e in sorted(f.terms, reverse=True):
        c = f.terms[e]
        mon = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(f.vars, e) if k)
        cs = F.fmt(c)
        if not mon:
            parts.append(cs)
        elif c == F.one:
            parts.append(mon)
        else:
            parts.append((f"({cs})" if any(ch in cs for ch in "+/") or cs.startswith("-") else cs) + "*" + mon)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# elimination

def resultant_in(a: MultiPoly, b: MultiPoly, name: str,
                 deg_a: int | None = None, deg_b: int | None = None) -> MultiPoly:
    """Eliminate ``name`` via the Sylvester determinant (Bareiss, exact).

    Coefficients in ``name`` become matrix entries, so the degree of the
    result in the remaining variables follows the row structure: ``deg_b``
    rows carry coefficients of ``a`` and ``deg_a`` rows those of ``b``.
    """
    b = a._coerce(b)
    if name not in a.vars:
        raise ValueError(f"variable {name} not present")
    if name not in a.used_vars() and name not in b.used_vars():
        raise ValueError(f"variable {name} occurs in neither polynomial")
    m = a.degree_in(name) if deg_a is None else deg_a
    n = b.degree_in(name) if deg_b is None else deg_b
    ca, cb = a.coefficients_in(name), b.coefficients_in(name)
    zero = MultiPoly(a.field, a.vars)
    if m <= 0 and n <= 0:
        raise ValueError("nothing to eliminate")
    if m == 0:
        return ca.get(0, zero) ** n
    if n == 0:
        return cb.get(0, zero) ** m
    ra = [ca.get(k, zero) for k in range(m, -1, -1)]
    rb = [cb.get(k, zero) for k in range(n, -1, -1)]
    M = sylvester_matrix(ra, rb, zero)
    return bareiss_determinant(M)


def eliminate_chain(polys: Sequence[MultiPoly], order: Sequence[str]) -> MultiPoly:
    """Iterated resultants: eliminate ``order`` one variable at a time,
    pairing consecutive polynomials, extracting content after every step."""
    cur = list(polys)
    for name in order:
        nxt = []
        for a, b in zip(cur, cur[1:]):
            if name in a.used_vars() or name in b.used_vars():
                r = resultant_in(a, b, name)
            else:
                r = a
            nxt.append(r.content_free())
        cur = nxt or cur
    return cur[0]


# ---------------------------------------------------------------------------
# binary forms

class BinaryForm:
    """Homogeneous form of degree ``d`` in two variables; ``coeffs[i]`` is the
    coefficient of ``x^(d-i) y^i``.  Coefficients may be raw field values or
    polynomials (anything supporting ring operations)."""

    __slots__ = ("field", "degree", "coeffs", "vars")

    def __init__(self, field, degree: int, coeffs: Sequence, variables=("x", "y")):
        if len(coeffs) != degree + 1:
            raise ValueError("binary form needs degree+1 coefficients")
        self.field = get_field(field)
        self.degree = degree
        self.coeffs = tuple(coeffs)
        self.vars = tuple(variables)

    @classmethod
    def from_poly(cls, f: MultiPoly, x: str, y: str, degree: int | None = None) -> "BinaryForm":
        used = f.used_vars()
        if used - {x, y}:
            raise ValueError("not a binary form")
        d = f.total_degree() if degree is None else degree
        if not f.is_homogeneous(d) and not f.is_zero():
            raise ValueError("not homogeneous")
        F = f.field
        ix, iy = f.vars.index(x), f.vars.index(y)
        cs = [F.zero] * (max(d, 0) + 1)
        for e, c in f.terms.items():
            cs[e[iy]] = c
        return cls(F, max(d, 0), cs, (x, y))

    def is_zero(self) -> bool:
        return all(c == self.field.zero for c in self.coeffs)

    def __call__(self, x, y):
        F = self.field
        acc = F.zero
        d = self.degree
        for i, c in enumerate(self.coeffs):
            acc = F.add(acc, F.mul(c, F.mul(F.pow(x, d - i), F.pow(y, i))))
        return acc

    def dehomogenize(self) -> UniPoly:
        """``F(t, 1)`` as a polynomial in ``t`` (root at infinity = degree drop)."""
        return UniPoly(self.field, list(reversed(self.coeffs)), self.vars[0])

    def roots(self) -> list[tuple[tuple, int]]:
        """Projective roots ``((x, y), multiplicity)`` in the coefficient field,
        normalised with ``y = 1`` or ``(1, 0)``."""
        from .upoly import roots_with_multiplicity
        F = self.field
        if self.is_zero():
            raise ValueError("zero binary form")
        u = self.dehomogenize()
        out = []
        if u.degree >= 1:
            out = [((r, F.one), m) for r, m in roots_with_multiplicity(u)]
        inf = self.degree - u.degree
        if inf:
            out.append(((F.one, F.zero), inf))
        return out

    def discriminant(self):
        return binary_discriminant(self.coeffs, self.field)


def binary_discriminant(coeffs: Sequence, F: Field):
    """Discriminant of ``sum c_i x^(d-i) y^i``, normalised to agree with
    :func:`upoly.discriminant` of ``F(x, 1)`` whenever ``c_0 != 0``.

    Computed as ``Res(F_x, F_y)`` of the two partial derivatives (formal
    degree ``d-1`` each), scaled by ``(-1)^{d(d-1)/2} d^{-(d-2)}``.  The
    coefficients may be polynomials (then the result is a polynomial).
    """
    d = len(coeffs) - 1
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    raw = not hasattr(coeffs[0], "is_zero")
    if raw:
        fx = [F.mul(F.from_int(d - i), c) for i, c in enumerate(coeffs[:-1])]
        fy = [F.mul(F.from_int(i), c) for i, c in enumerate(coeffs) if i > 0]
        res = determinant(sylvester_matrix(fx, fy, F.zero), F)
        scale = F.inv(F.pow(F.from_int(d), d - 2))
        if (d * (d - 1) // 2) % 2:
            scale = F.neg(scale)
        return F.mul(res, scale)
    zero = coeffs[0] * 0
    fx = [c * (d - i) for i, c in enumerate(coeffs[:-1])]
    fy = [c * i for i, c in enumerate(coeffs) if i > 0]
    res = bareiss_determinant(sylvester_matrix(fx, fy, zero))
    scale = F.inv(F.pow(F.from_int(d), d - 2))
    if (d * (d - 1) // 2) % 2:
        scale = F.neg(scale)
    return res * scale


def discriminant_of(a):
    """Discriminant of a :class:`UniPoly` or :class:`BinaryForm`."""
    from .upoly import discriminant as udisc
    if isinstance(a, BinaryForm):
        return a.discriminant()
    return udisc(a)


# ---------------------------------------------------------------------------
# Hessian

def hessian_matrix(c: MultiPoly, among: Sequence[str]) -> list[list[MultiPoly]]:
    firsts = [c.derivative(v) for v in among]
    return [[firsts[i].derivative(v) for v in among] for i in range(len(among))]


def det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def hessian_determinant(c: MultiPoly, among: Sequence[str] | None = None) -> MultiPoly:
    """``det`` of the 3x3 matrix of second partials of a ternary cubic.

    ``among`` names the three form variables; any other variables (such as a
    pencil parameter) are treated as coefficients.  Sign: ``H(xyz) = 2xyz``.
    """
    if among is None:
        among = [v for v in c.vars if v in c.used_vars()]
        if len(among) != 3:
            among = list(c.vars[:3])
    if len(among) != 3:
        raise ValueError("need exactly three variables")
    if not c.is_homogeneous(3, among):
        raise ValueError("hessian_determinant needs a homogeneous cubic")
    return det3(hessian_matrix(c, among))
