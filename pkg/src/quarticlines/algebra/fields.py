"""Exact scalar fields: the rationals, prime fields and small extension fields.

Elements are stored as plain Python values so that polynomial code can stay
fast: ``Fraction`` over the rationals, ``int`` in ``[0, p)`` over a prime
field, and an ``int`` code over ``F_{p^k}`` whose base-``p`` digits are the
coefficients of the residue polynomial (low degree first).  The prime
subfield of ``F_{p^k}`` therefore has the same codes as ``F_p``.

:class:`FieldElement` wraps a raw value together with its spec for callers
that want operator syntax.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence


class FieldError(ValueError):
    """Raised for invalid field specifications or mixed-field arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p on coefficient lists (low degree first)
# used only to build extension fields; the general polynomial type lives in
# upoly.py

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        if c:
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
        _trim(a)
    return _trim(a)


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmulmod(a, b, m, p):
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_mod_p(m: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial (coefficients low degree first)."""
    m = _trim([c % p for c in m])
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, m, p), x, p):
        return False
    for r in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // r), m, p), x, p)
        if len(_pgcd(m, h, p)) > 1:
            return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree ``k`` over ``F_p``.

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are scanned in increasing
    order of the integer ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``, so the
    answer is reproducible.  Returns coefficients low degree first.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 2:
        raise FieldError("find_irreducible needs k >= 2")
    for n in range(p**k):
        digits = []
        for _ in range(k):
            digits.append(n % p)
            n //= p
        cand = digits + [1]
        if cand[0] == 0:
            continue
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Which exact field we compute in.

    ``kind`` is ``"Q"`` or ``"F"``.  Finite fields need ``p >= 5``; the
    single characteristic-3 use (the Fermat quartic over ``F_9``) goes through
    :meth:`char3`.
    """

    kind: str
    p: int = 0
    k: int = 1
    modulus: tuple[int, ...] | None = None
    allow_char3: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if self.kind == "Q":
            if self.p or self.k != 1 or self.modulus:
                raise FieldError("the rationals take no p, k or modulus")
            return
        if self.kind != "F":
            raise FieldError(f"unknown field kind {self.kind!r}")
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.p == 2 or (self.p == 3 and not self.allow_char3):
            raise FieldError(f"characteristic {self.p} is not supported")
        if self.k < 1:
            raise FieldError("extension degree must be >= 1")
        if self.k == 1:
            if self.modulus is not None:
                raise FieldError("prime field takes no modulus")
        else:
            if self.modulus is None:
                object.__setattr__(self, "modulus", find_irreducible(self.p, self.k))
            mod = tuple(int(c) % self.p for c in self.modulus)
            if len(mod) != self.k + 1 or mod[-1] != 1 or not is_irreducible_mod_p(mod, self.p):
                raise FieldError(f"modulus {self.modulus} is not monic irreducible of degree {self.k}")
            object.__setattr__(self, "modulus", mod)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("F", p, 1)

    @classmethod
    def extension(cls, p: int, k: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
        return cls("F", p, k, tuple(modulus) if modulus is not None else None)

    @classmethod
    def char3(cls, k: int = 2) -> "FieldSpec":
        return cls("F", 3, k, None, allow_char3=True)

    @property
    def is_finite(self) -> bool:
        return self.kind == "F"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int | None:
        return self.p**self.k if self.is_finite else None

    def field(self) -> "Field":
        return _build_field(self)

    def __str__(self):
        if self.kind == "Q":
            return "Q"
        return f"F_{self.p}" if self.k == 1 else f"F_{self.p}^{self.k}"


class Field:
    """Arithmetic on raw element values.  Subclasses implement the ops."""

    spec: FieldSpec
    zero: object
    one: object

    @property
    def characteristic(self) -> int:
        return self.spec.p

    @property
    def order(self):
        return self.spec.order

    @property
    def is_finite(self) -> bool:
        return self.spec.is_finite

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self.spec, self.convert(value))

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def __reduce__(self):
        return (_build_field, (self.spec,))


class RationalField(Field):
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def pow(self, a, e):
        return a**e

    def convert(self, v):
        if isinstance(v, FieldElement):
            v = v.value
        return Fraction(v)

    def from_int(self, n: int):
        return Fraction(n)

    def fmt(self, a) -> str:
        return str(a)

    def elements(self):
        raise FieldError("the rationals are infinite")


class PrimeField(Field):
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def convert(self, v):
        if isinstance(v, FieldElement):
            if v.spec == self.spec:
                return v.value
            raise FieldError("mixed fields")
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise FieldError(f"denominator of {v} vanishes mod {self.p}")
            return v.numerator * pow(v.denominator, self.p - 2, self.p) % self.p
        return int(v) % self.p

    def from_int(self, n: int):
        return n % self.p

    def fmt(self, a) -> str:
        return str(a)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def frobenius(self, a, j: int = 1):
        return a

    def in_subfield(self, a, j: int) -> bool:
        return True


class ExtensionField(Field):
    """``F_{p^k}`` via exp/log/Zech tables over a primitive element."""

    MAX_ORDER = 1 << 21

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, k = spec.p, spec.k
        q = p**k
        if q > self.MAX_ORDER:
            raise FieldError(f"F_{p}^{k} is too large for table arithmetic")
        self.p, self.k, self.q = p, k, q
        self.modulus = list(spec.modulus)
        self.zero = 0
        self.one = 1
        n = q - 1
        g = self._primitive_digits()
        exp = [0] * (2 * n)
        log = [-1] * q
        cur = [1]
        for i in range(n):
            c = self._encode(cur)
            exp[i] = c
            log[c] = i
            cur = _pmulmod(cur, g, self.modulus, p)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        zech = [-1] * n
        for i in range(n):
            c = exp[i]
            c1 = c + 1 if c % p != p - 1 else c - (p - 1)
            zech[i] = log[c1]  # -1 when 1 + g^i == 0
        self._exp, self._log, self._zech = exp, log, zech
        self._n = n
        self._half = n // 2
        self.generator = exp[1]

    def _encode(self, digits: list[int]) -> int:
        c = 0
        for d in reversed(digits):
            c = c * self.p + d
        return c

    def digits(self, c: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(c % self.p)
            c //= self.p
        return out

    def _primitive_digits(self) -> list[int]:
        p, m, n = self.p, self.modulus, self.p**self.k - 1
        factors = prime_factors(n)
        for c in range(p, p**self.k):
            g = _trim(self.digits(c))
            if all(_ppowmod(g, n // r, m, p) != [1] for r in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._n]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if a == 0:
            return 0
        return self._exp[self._log[a] + self._half]

    def sub(self, a, b):
        if b == 0:
            return a
        return self.add(a, self._exp[self._log[b] + self._half])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._n - self._log[a]) % self._n]

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self._n]

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self._n]

    def log(self, a) -> int:
        return self._log[a]

    def exp(self, i: int):
        return self._exp[i % self._n]

    def convert(self, v):
        if isinstance(v, FieldElement):
            if v.spec == self.spec:
                return v.value
            raise FieldError("mixed fields")
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise FieldError(f"denominator of {v} vanishes mod {self.p}")
            return v.numerator * pow(v.denominator, self.p - 2, self.p) % self.p
        if isinstance(v, (list, tuple)):
            return self._encode([int(d) % self.p for d in v])
        return int(v) % self.p

    def from_int(self, n: int):
        return n % self.p

    def fmt(self, a) -> str:
        ds = self.digits(a)
        terms = []
        for i in range(self.k - 1, -1, -1):
            d = ds[i]
            if not d:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mon = "a" if i == 1 else f"a^{i}"
                terms.append(mon if d == 1 else f"{d}*{mon}")
        return "+".join(terms) if terms else "0"

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def frobenius(self, a, j: int = 1):
        return self.pow(a, self.p**j)

    def in_subfield(self, a, j: int) -> bool:
        """True iff ``a`` lies in ``F_{p^j}`` (``j`` must divide ``k``)."""
        return self.pow(a, self.p**j) == a


class PolyExtensionField(ExtensionField):
    """``F_{p^k}`` by plain polynomial arithmetic modulo the defining
    polynomial; used above the table limit.  Same element codes."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.k = spec.p, spec.k
        self.q = spec.p**spec.k
        self.modulus = list(spec.modulus)
        self.zero = 0
        self.one = 1

    def _d(self, c):
        return _trim(self.digits(c))

    def _e(self, digits):
        return self._encode(list(digits) + [0] * (self.k - len(digits)))

    def add(self, a, b):
        p = self.p
        da, db = self.digits(a), self.digits(b)
        return self._encode([(x + y) % p for x, y in zip(da, db)])

    def neg(self, a):
        return self._encode([(-x) % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._e(_pmulmod(self._d(a), self._d(b), self.modulus, self.p))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return self._e(_ppowmod(self._d(a), e % (self.q - 1), self.modulus, self.p))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        r0, r1 = list(self.modulus), self._d(a)
        s0, s1 = [], [1]
        while len(r1) > 1:
            # one division step r0 = qt * r1 + rem
            qt = [0] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            inv_lead = pow(r1[-1], p - 2, p)
            while len(rem) >= len(r1) and rem:
                c = rem[-1] * inv_lead % p
                sh = len(rem) - len(r1)
                qt[sh] = c
                for i, v in enumerate(r1):
                    rem[sh + i] = (rem[sh + i] - c * v) % p
                _trim(rem)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(qt, s1, p), p)
        c = pow(r1[0], p - 2, p)
        return self._e(_pmod([x * c % p for x in s1], self.modulus, p))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def log(self, a):  # pragma: no cover
        raise FieldError("no discrete logarithms above the table limit")

    def exp(self, i):  # pragma: no cover
        raise FieldError("no discrete logarithms above the table limit")


@lru_cache(maxsize=None)
def _build_field(spec: FieldSpec) -> Field:
    if spec.kind == "Q":
        return RationalField(spec)
    if spec.k == 1:
        return PrimeField(spec)
    if spec.p**spec.k > ExtensionField.MAX_ORDER:
        return PolyExtensionField(spec)
    return ExtensionField(spec)


def get_field(spec_or_field) -> Field:
    if isinstance(spec_or_field, Field):
        return spec_or_field
    return _build_field(spec_or_field)


def finite_field(p: int, k: int = 1) -> Field:
    if p == 3:
        return FieldSpec.char3(k).field()
    return FieldSpec.extension(p, k).field() if k > 1 else FieldSpec.prime(p).field()


@dataclass(frozen=True)
class FieldElement:
    """A raw value tagged with its field, with the usual operators."""

    spec: FieldSpec
    value: object

    @property
    def field(self) -> Field:
        return _build_field(self.spec)

    def _other(self, o):
        if isinstance(o, FieldElement):
            if o.spec != self.spec:
                raise FieldError(f"mixed fields {self.spec} and {o.spec}")
            return o.value
        return self.field.convert(o)

    def __add__(self, o):
        return FieldElement(self.spec, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.spec, self.field.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return FieldElement(self.spec, self.field.sub(self._other(o), self.value))

    def __mul__(self, o):
        return FieldElement(self.spec, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.spec, self.field.div(self.value, self._other(o)))

    def __rtruediv__(self, o):
        return FieldElement(self.spec, self.field.div(self._other(o), self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.field.pow(self.value, e))

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.spec == o.spec and self.value == o.value
        try:
            return self.value == self.field.convert(o)
        except (FieldError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __bool__(self):
        return self.value != self.field.zero

    def __repr__(self):
        return f"{self.field.fmt(self.value)} in {self.spec}"

    def __str__(self):
        return self.field.fmt(self.value)


class FieldEmbedding:
    """The map ``F_{p^a} -> F_{p^b}`` for ``a | b``.

    A root of the small field's modulus is found in the big field; elements
    are sent by evaluating their residue polynomial there.
    """

    def __init__(self, small: Field, big: Field):
        if small.characteristic != big.characteristic:
            raise FieldError("embedding needs equal characteristic")
        ks, kb = small.spec.k, big.spec.k
        if kb % ks:
            raise FieldError(f"F_p^{ks} does not embed in F_p^{kb}")
        self.small, self.big = small, big
        if ks == 1:
            self._image = None
            return
        theta = None
        mod = small.spec.modulus
        for c in big.elements():
            acc = 0
            for coeff in reversed(mod):
                acc = big.add(big.mul(acc, c), big.from_int(coeff))
            if acc == 0:
                theta = c
                break
        if theta is None:  # pragma: no cover
            raise FieldError("modulus has no root in the big field")
        self.theta = theta
        self._image = {}
        powers = [big.one]
        for _ in range(ks - 1):
            powers.append(big.mul(powers[-1], theta))
        self._powers = powers

    def __call__(self, a):
        if self._image is None:
            return a  # prime subfield codes agree
        hit = self._image.get(a)
        if hit is not None:
            return hit
        big = self.big
        acc = big.zero
        for d, pw in zip(self.small.digits(a), self._powers):
            if d:
                acc = big.add(acc, big.mul(big.from_int(d), pw))
        self._image[a] = acc
        return acc
