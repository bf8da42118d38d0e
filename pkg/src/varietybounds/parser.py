"""Recursive-descent parser for polynomial expressions in x and y.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | NUMBER 'i' | 'i' | 'x' | 'y' | '(' expr ')'

Multiplication must be explicit (``2*x``, not ``2x``); ``2i`` is an
imaginary literal.  Expansion runs over exact Gaussian rationals and is
converted to doubles once at the end, so ``(x + 0.1)^2`` yields the double
nearest 1/100, not ``0.1 * 0.1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import MAX_DEGREE, BivariatePoly

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INTEGER = re.compile(r"\d+")

# exact polynomial: {(i, j): (re, im)} with Fraction parts
_Exact = dict


class PolySyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected, message: str | None = None):
        self.text = text
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = frozenset(expected)
        found = repr(text[pos]) if pos < len(text) else "end of input"
        detail = message or f"expected {' or '.join(sorted(self.expected))}, found {found}"
        super().__init__(f"syntax error at offset {self.offset}: {detail}")


class ExponentOverflowError(PolySyntaxError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # number, imag, x, y, i, op, end
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class ParsedExpression:
    source: str
    tokens: tuple[Token, ...]
    poly: BivariatePoly


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _NUMBER.match(text, pos)
        if m:
            end = m.end()
            if end < n and text[end] == "i":
                out.append(Token("imag", text[pos:end], pos, end + 1))
                pos = end + 1
            else:
                out.append(Token("number", m.group(), pos, end))
                pos = end
            continue
        if ch in "xyi":
            out.append(Token(ch, ch, pos, pos + 1))
        elif ch in "+-*^()":
            out.append(Token("op", ch, pos, pos + 1))
        else:
            raise PolySyntaxError(text, pos, {"number", "x", "y", "i", "operator"},
                                  f"unexpected character {ch!r}")
        pos += 1
    out.append(Token("end", "", n, n))
    return out


def _const(re_part: Fraction, im_part: Fraction = Fraction(0)) -> _Exact:
    if re_part == 0 and im_part == 0:
        return {}
    return {(0, 0): (re_part, im_part)}


def _add(a: _Exact, b: _Exact, sign: int = 1) -> _Exact:
    out = dict(a)
    for k, (br, bi) in b.items():
        ar, ai = out.get(k, (Fraction(0), Fraction(0)))
        r, i = ar + sign * br, ai + sign * bi
        if r == 0 and i == 0:
            out.pop(k, None)
        else:
            out[k] = (r, i)
    return out


def _degree(a: _Exact) -> int:
    return max((i + j for i, j in a), default=0)


def _mul(a: _Exact, b: _Exact) -> _Exact:
    out: _Exact = {}
    for (i1, j1), (r1, m1) in a.items():
        for (i2, j2), (r2, m2) in b.items():
            k = (i1 + i2, j1 + j2)
            r, m = out.get(k, (Fraction(0), Fraction(0)))
            out[k] = (r + r1 * r2 - m1 * m2, m + r1 * m2 + m1 * r2)
    return {k: v for k, v in out.items() if v != (0, 0)}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected, message=None, cls=PolySyntaxError):
        raise cls(self.text, self.tok.start, expected, message)

    def accept_op(self, ops: str) -> str | None:
        t = self.tok
        if t.kind == "op" and t.text in ops:
            self.pos += 1
            return t.text
        return None

    def check_degree(self, a: _Exact, start: int) -> _Exact:
        if _degree(a) > MAX_DEGREE:
            raise ExponentOverflowError(self.text, start, {"smaller exponent"},
                                        f"total degree exceeds {MAX_DEGREE}")
        return a

    def parse(self) -> _Exact:
        value = self.expr()
        if self.tok.kind != "end":
            self.fail({"'+'", "'-'", "'*'", "'^'", "end of input"})
        return value

    def expr(self) -> _Exact:
        value = self.term()
        while (op := self.accept_op("+-")) is not None:
            value = _add(value, self.term(), 1 if op == "+" else -1)
        return value

    def term(self) -> _Exact:
        start = self.tok.start
        value = self.unary()
        while self.accept_op("*"):
            value = self.check_degree(_mul(value, self.unary()), start)
        return value

    def unary(self) -> _Exact:
        op = self.accept_op("+-")
        if op == "-":
            return _add({}, self.unary(), -1)
        if op == "+":
            return self.unary()
        return self.power()

    def power(self) -> _Exact:
        start = self.tok.start
        base = self.atom()
        if not self.accept_op("^"):
            return base
        t = self.tok
        if t.kind != "number" or not _INTEGER.fullmatch(t.text):
            self.fail({"integer"})
        n = int(t.text)
        if n > MAX_DEGREE:
            self.fail({"integer <= %d" % MAX_DEGREE}, f"exponent {n} exceeds {MAX_DEGREE}",
                      cls=ExponentOverflowError)
        self.pos += 1
        if n > 0 and _degree(base) * n > MAX_DEGREE:
            raise ExponentOverflowError(self.text, start, {"smaller exponent"},
                                        f"total degree exceeds {MAX_DEGREE}")
        result = _const(Fraction(1))
        for _ in range(n):
            result = _mul(result, base)
        return result

    def atom(self) -> _Exact:
        t = self.tok
        if t.kind == "number":
            self.pos += 1
            return _const(Fraction(t.text))
        if t.kind == "imag":
            self.pos += 1
            return _const(Fraction(0), Fraction(t.text))
        if t.kind == "i":
            self.pos += 1
            return _const(Fraction(0), Fraction(1))
        if t.kind == "x":
            self.pos += 1
            return {(1, 0): (Fraction(1), Fraction(0))}
        if t.kind == "y":
            self.pos += 1
            return {(0, 1): (Fraction(1), Fraction(0))}
        if self.accept_op("("):
            value = self.expr()
            if not self.accept_op(")"):
                self.fail({"')'"})
            return value
        self.fail({"number", "'x'", "'y'", "'i'", "'('"})


def parse_poly(text: str) -> ParsedExpression:
    p = _Parser(text)
    exact = p.parse()
    terms = {k: complex(float(r), float(i)) for k, (r, i) in exact.items()}
    return ParsedExpression(text, tuple(p.tokens), BivariatePoly.from_terms(terms))


def parse(text: str) -> BivariatePoly:
    return parse_poly(text).poly


def _fmt_coeff(c: complex) -> str:
    sign = "-" if c.imag < 0 else "+"
    return f"({c.real!r}{sign}{abs(c.imag)!r}i)"


def pretty(f: BivariatePoly) -> str:
    """Text form that :func:`parse` maps back to the same coefficient grid."""
    parts = []
    for (i, j), c in f.terms().items():
        factors = [_fmt_coeff(c)]
        if i:
            factors.append("x" if i == 1 else f"x^{i}")
        if j:
            factors.append("y" if j == 1 else f"y^{j}")
        parts.append("*".join(factors))
    return " + ".join(parts) if parts else "0"
