"""Text format for quartic surfaces.

A file holds directives and one polynomial (possibly spread over lines)::

    # comment
    field F 13          # or: field Q, field F 3 2
    param r = -16/27
    x1^4 - x1*x2^3 = x3^4 - x3*x4^3

Variables are ``x1..x4`` with aliases ``x, y, z, w``.  Coefficients are
integers or fractions; ``param`` names stand for constants.  ``lhs = rhs``
means ``lhs - rhs``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Mapping

from .algebra.fields import Field, FieldError, FieldSpec, finite_field
from .algebra.mpoly import MultiPoly
from .surface import VARS, QuarticSurface, SurfaceError

ALIASES = {"x": "x1", "y": "x2", "z": "x3", "w": "x4"}
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()=]))")


class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int | None = None, line: int | None = None):
        self.msg, self.text, self.pos, self.line = msg, text, pos, line
        where = ""
        if pos is not None:
            where = f" at column {pos + 1}"
            if line is not None:
                where = f" at line {line}, column {pos + 1}"
        super().__init__(f"{msg}{where}" + (f"\n  {text}\n  {' ' * pos}^" if pos is not None and text else ""))


@dataclass
class SurfaceSource:
    """Parsed file contents before a field is fixed."""

    expression: str
    expression_line: int
    field: FieldSpec | None = None
    params: dict[str, Fraction] = dc_field(default_factory=dict)
    name: str = ""


def parse_field(words) -> FieldSpec:
    """``["Q"]``, ``["F", p]`` or ``["F", p, k]``."""
    words = [str(w) for w in words]
    if not words:
        raise ParseError("empty field specification")
    if words[0].upper() == "Q" and len(words) == 1:
        return FieldSpec.rationals()
    if words[0].upper() == "F" and len(words) in (2, 3):
        try:
            p = int(words[1])
            k = int(words[2]) if len(words) == 3 else 1
        except ValueError:
            raise ParseError(f"bad field specification {' '.join(words)!r}") from None
        try:
            return finite_field(p, k).spec
        except FieldError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"bad field specification {' '.join(words)!r}; use 'Q' or 'F p [k]'")


def parse_number(text: str) -> Fraction:
    try:
        return Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def read_source(text: str, name: str = "") -> SurfaceSource:
    spec = None
    params: dict[str, Fraction] = {}
    body: list[str] = []
    first = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "field":
            spec = parse_field(line.split()[1:])
        elif head == "param":
            m = re.fullmatch(r"param\s+([A-Za-z_]\w*)\s*=\s*(.+)", line)
            if not m:
                raise ParseError("expected 'param name = value'", raw, 0, lineno)
            params[m.group(1)] = parse_number(m.group(2))
        else:
            if first is None:
                first = lineno
            body.append(line)
    if not body:
        raise ParseError("no polynomial found")
    return SurfaceSource(" ".join(body), first, spec, params, name)


class _Parser:
    def __init__(self, text: str, F: Field, params: Mapping[str, Fraction], line: int | None):
        self.text, self.F, self.params, self.line = text, F, params, line
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                start = len(text) - len(text[pos:].lstrip())
                self.fail(f"unexpected character {text[start]!r}", start)
            start = m.start(m.lastindex)
            self.toks.append((m.group(m.lastindex), m.lastindex, start))
            pos = m.end()
        self.i = 0

    def fail(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, self.text, pos, self.line)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[0] != value):
            self.fail(f"expected {value!r}" if value else "unexpected end of input")
        self.i += 1
        return tok

    def const(self, c) -> MultiPoly:
        try:
            v = self.F.convert(c)
        except FieldError as exc:
            self.fail(f"coefficient clash with the field: {exc}")
        return MultiPoly.const(self.F, VARS, v)

    # grammar: equation := expr ['=' expr]; expr := ['-'|'+'] term (('+'|'-') term)*
    # term := power (('*'|'/'|juxtaposition) power)*; power := atom (('^'|'**') int)*
    def equation(self) -> MultiPoly:
        lhs = self.expr()
        if self.peek()[0] == "=":
            self.take("=")
            lhs = lhs - self.expr()
        if self.peek()[0] is not None:
            self.fail(f"unexpected {self.peek()[0]!r}")
        return lhs

    def expr(self) -> MultiPoly:
        sign = None
        if self.peek()[0] in ("+", "-"):
            sign = self.take()[0]
        acc = self.term()
        if sign == "-":
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "*":
                self.take()
                acc = acc * self.power()
            elif tok[0] == "/":
                self.take()
                pos = self.peek()[2]
                den = self.power()
                if den.total_degree() > 0:
                    self.fail("division by a non-constant", pos)
                c = den.terms.get((0, 0, 0, 0), self.F.zero)
                if c == self.F.zero:
                    msg = "division by zero"
                    if self.F.is_finite:
                        msg = f"division by zero in {self.F.spec} (characteristic clash?)"
                    self.fail(msg, pos)
                acc = acc.scale(self.F.inv(c))
            elif tok[1] in (1, 2) or tok[0] == "(":
                acc = acc * self.power()  # juxtaposition, e.g. "2x1"
            else:
                return acc

    def power(self) -> MultiPoly:
        base = self.atom()
        while self.peek()[0] in ("^", "**"):
            self.take()
            tok = self.take()
            if tok[1] != 1:
                self.fail("exponent must be a non-negative integer", tok[2])
            base = base ** int(tok[0])
        return base

    def atom(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] is None:
            self.fail("unexpected end of input")
        if tok[0] == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        if tok[0] == "-":
            self.take()
            return -self.power()
        if tok[1] == 1:
            self.take()
            return self.const(int(tok[0]))
        if tok[1] == 2:
            self.take()
            name = ALIASES.get(tok[0], tok[0])
            if name in VARS:
                return MultiPoly.var(self.F, VARS, name)
            if tok[0] in self.params:
                return self.const(self.params[tok[0]])
            self.fail(f"unknown symbol {tok[0]!r}", tok[2])
        self.fail(f"unexpected {tok[0]!r}")


def parse_polynomial(text: str, F: Field, params: Mapping[str, Fraction] | None = None,
                     line: int | None = None) -> MultiPoly:
    return _Parser(text, F, params or {}, line).equation()


def parse_surface(text: str, field_spec: FieldSpec | None = None, params: Mapping[str, Fraction] | None = None,
                  name: str = "") -> QuarticSurface:
    """Parse a surface file or an inline polynomial.

    ``field_spec`` overrides a ``field`` directive; without either the field
    is Q.  ``params`` override ``param`` directives.
    """
    src = read_source(text, name)
    spec = field_spec or src.field or FieldSpec.rationals()
    allp = dict(src.params)
    allp.update(params or {})
    f = parse_polynomial(src.expression, spec.field(), allp, src.expression_line)
    if f.is_zero():
        raise ParseError("polynomial is zero over this field")
    if not f.is_homogeneous(f.total_degree()):
        raise ParseError("polynomial is not homogeneous")
    if f.total_degree() != 4:
        raise ParseError(f"polynomial has degree {f.total_degree()}, expected 4")
    try:
        return QuarticSurface(f, name=name or src.name)
    except SurfaceError as exc:  # pragma: no cover - guarded above
        raise ParseError(str(exc)) from None


def load_surface(path: str, field_spec: FieldSpec | None = None, params=None) -> QuarticSurface:
    from pathlib import Path
    p = Path(path)
    return parse_surface(p.read_text(), field_spec, params, name=p.stem)
