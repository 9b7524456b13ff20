"""Dense univariate polynomials over an exact field, plus the univariate
toolbox: Sylvester resultants, discriminants, square-free decomposition,
distinct-degree factorisation and root finding over finite fields.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Sequence

from .fields import Field, FieldError, FieldSpec, get_field
from .linalg import determinant


class UniPoly:
    """Polynomial ``c[0] + c[1] x + ... ``; coefficients are raw field values."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field, coeffs: Iterable = (), var: str = "x"):
        F = get_field(field)
        cs = list(coeffs)
        z = F.zero
        while cs and cs[-1] == z:
            cs.pop()
        self.field = F
        self.coeffs = tuple(cs)
        self.var = var

    # construction ---------------------------------------------------------
    @classmethod
    def from_values(cls, field, values: Iterable, var: str = "x") -> "UniPoly":
        F = get_field(field)
        return cls(F, [F.convert(v) for v in values], var)

    @classmethod
    def monomial(cls, field, n: int, c=None, var="x") -> "UniPoly":
        F = get_field(field)
        return cls(F, [F.zero] * n + [F.one if c is None else c], var)

    @classmethod
    def constant(cls, field, c, var="x") -> "UniPoly":
        return cls(field, [c], var)

    def _new(self, coeffs) -> "UniPoly":
        return UniPoly(self.field, coeffs, self.var)

    # basic properties -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.field.spec == other.field.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.spec, self.coeffs))

    def __repr__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == F.zero:
                continue
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = F.fmt(c)
            if mon and c == F.one:
                parts.append(mon)
            elif mon:
                parts.append(f"({cs})*{mon}" if any(ch in cs for ch in "+-/") else f"{cs}*{mon}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if self.field.spec != other.field.spec:
            raise FieldError(f"mixed fields {self.field.spec} and {other.field.spec}")

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly(self.field, [self.field.convert(other)], self.var)
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new([F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly(self.field, [self.field.convert(other)], self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, UniPoly):
            c = F.convert(other)
            return self._new([F.mul(c, x) for x in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new([])
        out = [F.zero] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x == F.zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return self._new(out)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        F = self.field
        return self._new([F.mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int):
        result = self._new([self.field.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        b = other.coeffs
        inv = F.inv(b[-1])
        if len(r) - 1 < db:
            return self._new([]), self
        qt = [F.zero] * (len(r) - db)
        for s in range(len(r) - 1 - db, -1, -1):
            c = r[s + db]
            if c == F.zero:
                continue
            c = F.mul(c, inv)
            qt[s] = c
            for i in range(db + 1):
                r[s + i] = F.sub(r[s + i], F.mul(c, b[i]))
        return self._new(qt), self._new(r[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self) -> "UniPoly":
        F = self.field
        return self._new([F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    evaluate = __call__

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = self._new([])
        for c in reversed(self.coeffs):
            acc = acc * other + self._new([c])
        return acc

    def powmod(self, e: int, m: "UniPoly") -> "UniPoly":
        result = self._new([self.field.one]) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def is_squarefree(self) -> bool:
        return gcd(self, self.derivative()).degree == 0

    def map_coeffs(self, fn, field=None) -> "UniPoly":
        return UniPoly(field or self.field, [fn(c) for c in self.coeffs], self.var)


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def xgcd(a: UniPoly, b: UniPoly):
    F = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly(F, [F.one], a.var), UniPoly(F, [], a.var)
    t0, t1 = UniPoly(F, [], a.var), UniPoly(F, [F.one], a.var)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ---------------------------------------------------------------------------
# resultants and discriminants

def sylvester_matrix(a: Sequence, b: Sequence, zero) -> list[list]:
    """Sylvester matrix of two coefficient lists given high degree first.

    Rows: ``deg b`` shifted copies of ``a`` followed by ``deg a`` shifted
    copies of ``b``.  This row order fixes the sign convention
    ``Res(a, b) = lc(a)^deg(b) * prod b(alpha)`` over the roots of ``a``.
    """
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(a) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(b) + [zero] * (size - n - 1 - i))
    return rows


def resultant(a: UniPoly, b: UniPoly, deg_a: int | None = None, deg_b: int | None = None):
    """Determinant of the Sylvester matrix of ``a`` and ``b``.

    ``deg_a``/``deg_b`` give formal degrees (leading zeros allowed), which is
    how homogeneous data keeps track of roots at infinity.
    """
    a._check(b)
    F = a.field
    m = a.degree if deg_a is None else deg_a
    n = b.degree if deg_b is None else deg_b
    if a.is_zero() and b.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if m < 0 or n < 0:
        return F.zero
    if m == 0 and n == 0:
        return F.one
    ac = [a.coeff(i) for i in range(m, -1, -1)]
    bc = [b.coeff(i) for i in range(n, -1, -1)]
    return determinant(sylvester_matrix(ac, bc, F.zero), F)


def discriminant(a: UniPoly):
    """``(-1)^{n(n-1)/2} Res(a, a') / lc(a)``."""
    n = a.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    F = a.field
    r = resultant(a, a.derivative(), n, n - 1)
    d = F.div(r, a.lc)
    return F.neg(d) if (n * (n - 1) // 2) % 2 else d


# ---------------------------------------------------------------------------
# square-free decomposition

def _pth_root(a: UniPoly) -> UniPoly:
    """For ``a = b(x^p)`` over a perfect field of characteristic p, return
    ``b^{1/p}`` coefficientwise-rooted."""
    F = a.field
    p, k = F.spec.p, F.spec.k
    e = p ** (k - 1)
    out = []
    for i in range(0, len(a.coeffs), p):
        out.append(F.pow(a.coeffs[i], e) if k > 1 else a.coeffs[i])
    return a._new(out)


def squarefree_decomposition(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic pairwise coprime square-free factors with multiplicities.

    ``a = lc(a) * prod f_i^{m_i}``.  Works in characteristic 0 and in
    characteristic p (p-th roots are taken when a derivative vanishes).
    """
    if a.is_zero():
        raise ValueError("square-free decomposition of zero")
    F = a.field
    p = F.characteristic
    out: dict[int, UniPoly] = {}

    def merge(f: UniPoly, m: int):
        if f.degree > 0:
            out[m] = out[m] * f if m in out else f

    def rec(f: UniPoly, mult: int):
        f = f.monic()
        if f.degree <= 0:
            return
        d = f.derivative()
        if d.is_zero():
            rec(_pth_root(f), mult * p)
            return
        c = gcd(f, d)
        w = f.exquo(c)
        i = 1
        while w.degree > 0:
            y = gcd(w, c)
            z = w.exquo(y)
            merge(z.monic(), i * mult)
            i += 1
            w = y
            c = c.exquo(y)
        if c.degree > 0:
            # what is left is a p-th power
            rec(_pth_root(c.monic()), mult * p)

    rec(a, 1)
    return sorted(((f.monic(), m) for m, f in out.items()), key=lambda fm: fm[1])


# ---------------------------------------------------------------------------
# finite-field factorisation tools

EXHAUSTIVE_ROOT_LIMIT = 64


def distinct_degree_factorization(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """For square-free monic ``a`` over ``F_q``: list of ``(g_d, d)`` where
    ``g_d`` is the product of the irreducible factors of degree ``d``."""
    F = a.field
    q = F.order
    out = []
    f = a.monic()
    x = UniPoly(F, [F.zero, F.one], a.var)
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f, f.degree))
            break
        h = h.powmod(q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f.exquo(g)
            h = h % f
    return out


def equal_degree_factorization(h: UniPoly, d: int, seed: int = 0) -> list[UniPoly]:
    """Monic irreducible factors of a square-free ``h`` all of whose factors
    have degree ``d`` (Cantor-Zassenhaus, odd ``q``, seeded)."""
    F = h.field
    h = h.monic()
    if h.degree == d:
        return [h]
    if h.degree % d:
        raise ValueError("degree of h is not a multiple of d")
    rng = random.Random(seed)
    e = (F.order**d - 1) // 2
    one = UniPoly(F, [F.one], h.var)
    while True:
        a = UniPoly(F, [F.convert(_random_code(F, rng)) for _ in range(h.degree)], h.var)
        if a.degree <= 0:
            continue
        g = gcd(h, a)
        if 0 < g.degree < h.degree:
            break
        g = gcd(h, a.powmod(e, h) - one)
        if 0 < g.degree < h.degree:
            break
    parts = equal_degree_factorization(g, d, seed + 1) + equal_degree_factorization(h.exquo(g), d, seed + 2)
    return sorted(parts, key=lambda u: [u.coeffs[i] for i in range(len(u.coeffs) - 1, -1, -1)])


def _random_code(F: Field, rng: random.Random):
    k = F.spec.k
    return [rng.randrange(F.spec.p) for _ in range(k)] if k > 1 else rng.randrange(F.spec.p)


def irreducible_factors(a: UniPoly) -> list[tuple[UniPoly, int]]:
    """``(h, m)``: monic irreducible factors with multiplicity, over a finite field."""
    out = []
    for g, m in squarefree_decomposition(a):
        if g.degree <= 0:
            continue
        for block, d in distinct_degree_factorization(g.monic()):
            out.extend((h, m) for h in equal_degree_factorization(block, d))
    return out


def _split_roots(h: UniPoly) -> list:
    """Roots of a monic square-free ``h`` splitting into linear factors
    over a finite field.  Deterministic: prime fields use the shifted
    Legendre map ``(x+d)^((p-1)/2)``, extension fields use trace maps
    ``x -> Tr(beta*x)`` over a basis."""
    F = h.field
    if h.degree == 0:
        return []
    if h.degree == 1:
        return [F.neg(F.div(h.coeffs[0], h.coeffs[1]))]
    q = F.order
    if q <= EXHAUSTIVE_ROOT_LIMIT:
        return [c for c in F.elements() if h(c) == F.zero]
    p, k = F.spec.p, F.spec.k
    x = UniPoly(F, [F.zero, F.one], h.var)
    if k == 1:
        e = (p - 1) // 2
        for d in range(p):
            s = UniPoly(F, [F.from_int(d), F.one], h.var).powmod(e, h) - UniPoly(F, [F.one], h.var)
            g = gcd(h, s)
            if 0 < g.degree < h.degree:
                return _split_roots(g) + _split_roots(h.exquo(g))
        return [c for c in F.elements() if h(c) == F.zero]  # pragma: no cover
    for i in range(k):
        beta = F.convert([0] * i + [1])
        bx = x.scale(beta) % h
        tr = bx
        cur = bx
        for _ in range(k - 1):
            cur = cur.powmod(p, h)
            tr = tr + cur
        for c in range(p):
            g = gcd(h, tr - UniPoly(F, [F.from_int(c)], h.var))
            if 0 < g.degree < h.degree:
                return _split_roots(g) + _split_roots(h.exquo(g))
    raise AssertionError("trace splitting failed")  # pragma: no cover


def rational_roots_finite(a: UniPoly) -> list:
    """Distinct roots of ``a`` in its (finite) field."""
    F = a.field
    if a.is_zero():
        raise ValueError("roots of the zero polynomial")
    if a.degree <= 0:
        return []
    if a.degree == 1:
        return [F.neg(F.div(a.coeffs[0], a.coeffs[1]))]
    if F.order <= EXHAUSTIVE_ROOT_LIMIT:
        return [c for c in F.elements() if a(c) == F.zero]
    x = UniPoly(F, [F.zero, F.one], a.var)
    am = a.monic()
    h = gcd(am, x.powmod(F.order, am) - x)
    return _split_roots(h)


def _rational_roots_Q(a: UniPoly) -> list[Fraction]:
    den = 1
    for c in a.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in a.coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    roots = {Fraction(0)} if len(ints) < len(a.coeffs) else set()
    if len(ints) <= 1:
        return sorted(roots)
    c0, cn = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        return [d for d in range(1, n + 1) if n % d == 0]

    for num in divisors(c0):
        for dd in divisors(cn):
            for s in (1, -1):
                r = Fraction(s * num, dd)
                if a(r) == 0:
                    roots.add(r)
    return sorted(roots)


def roots_with_multiplicity(a: UniPoly, field=None) -> list[tuple[object, int]]:
    """Roots of ``a`` lying in its coefficient field, with multiplicities.

    Over a finite field every root is found.  Over the rationals only rational
    roots are returned (rational root theorem, fine for small coefficients).
    """
    if field is not None and get_field(field).spec != a.field.spec:
        raise FieldError("polynomial is not over the requested field")
    if a.is_zero():
        raise ValueError("roots of the zero polynomial")
    F = a.field
    out = []
    for f, m in squarefree_decomposition(a):
        rs = _rational_roots_Q(f) if not F.is_finite else rational_roots_finite(f)
        out.extend((r, m) for r in rs)
    return sorted(out, key=lambda rm: (str(type(rm[0])), rm[0]))


def interpolate(F: Field, xs: Sequence, ys: Sequence, var="x") -> UniPoly:
    """Lagrange interpolation through distinct ``xs``."""
    result = UniPoly(F, [], var)
    for i, xi in enumerate(xs):
        num = UniPoly(F, [F.one], var)
        den = F.one
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UniPoly(F, [F.neg(xj), F.one], var)
                den = F.mul(den, F.sub(xi, xj))
        result = result + num.scale(F.div(ys[i], den))
    return result
