"""Parser for the textual polynomial / operator format.

Accepted input looks like ``3/2 * nu1^2 * x1^2 x2^-1 - (nu1 + nu2)*x1*d1``:
terms joined by ``+``/``-``, factors joined by ``*`` or juxtaposition,
integer exponents after ``^`` (negative allowed on monomials), parentheses,
and ``/`` for division by parameter-only expressions.  ``nu<i>`` and ``k``
are parameters, ``d<i>`` is the derivative in the i-th variable, every other
identifier is a variable.  The printers in :mod:`exactcore` and
:mod:`weyl` emit text that parses back to an equal object.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .exactcore import (
    PARAM_NAMES,
    LaurentPoly,
    ParamScalar,
    natural_key,
    nu,
    scalar,
    K,
)
from .weyl import WeylOp

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_DERIV = re.compile(r"d(\d+)$")
_NU = re.compile(r"nu(\d+)$")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif ident is not None:
            tokens.append(("id", ident))
        elif op.strip():
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}")
            tokens.append(("op", op))
        pos = m.end()
    return tokens


def _is_param(name: str) -> bool:
    return name in PARAM_NAMES


def infer_variables(text: str) -> tuple[str, ...]:
    names = set()
    for kind, val in _tokenize(text):
        if kind == "id" and not _is_param(val) and not _DERIV.match(val):
            names.add(val)
    return tuple(sorted(names, key=natural_key))


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = tuple(variables)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse(self) -> WeylOp:
        if not self.tokens:
            raise ParseError("empty expression")
        out = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return out

    def expr(self) -> WeylOp:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                out = out + t if val == "+" else out - t
            else:
                return out

    def term(self) -> WeylOp:
        out = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.power()
            elif kind == "op" and val == "/":
                self.take()
                div = self.power()
                if div.order() > 0 or any(any(xe) for xe, _ in div.terms):
                    raise ParseError("can only divide by parameter expressions")
                out = out.scale(ParamScalar(1) / _as_scalar(div))
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                out = out * self.power()
            else:
                return out

    def power(self) -> WeylOp:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            neg = False
            kind, val = self.peek()
            if kind == "op" and val == "-":
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            if neg:
                return _negative_power(base, val)
            return base**val
        return base

    def atom(self) -> WeylOp:
        kind, val = self.take()
        if kind == "num":
            return WeylOp.scalar(self.vars, val)
        if kind == "id":
            if _is_param(val):
                return WeylOp.scalar(self.vars, K if val == "k" else nu(int(val[2:])))
            m = _DERIV.match(val)
            if m and val not in self.vars:
                i = int(m.group(1))
                if not 1 <= i <= len(self.vars):
                    raise ParseError(f"{val} refers to a missing variable")
                return WeylOp.d(self.vars, i - 1)
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}")
            return WeylOp.x(self.vars, val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def _as_scalar(op: WeylOp) -> ParamScalar:
    if not op.terms:
        raise ParseError("division by zero")
    ((xe, de), c), = op.terms.items()
    return c


def _negative_power(base: WeylOp, m: int) -> WeylOp:
    if len(base.terms) != 1:
        raise ParseError("negative exponent on a non-monomial")
    ((xe, de), c), = base.terms.items()
    if any(de):
        raise ParseError("negative exponent on a derivative")
    return WeylOp(base.variables, {(tuple(-m * e for e in xe), de): ParamScalar(1) / c**m})


def parse_operator(text: str, variables: Iterable[str] | None = None) -> WeylOp:
    vs = tuple(variables) if variables is not None else infer_variables(text)
    return _Parser(text, vs).parse()


def parse_poly(text: str, variables: Iterable[str] | None = None) -> LaurentPoly:
    op = parse_operator(text, variables)
    if op.order() > 0:
        raise ParseError("derivatives are not allowed in a polynomial")
    return op.as_poly()


def parse_scalar(text: str) -> ParamScalar:
    op = _Parser(text, ()).parse()
    if not op.terms:
        return scalar(0)
    return _as_scalar(op)
