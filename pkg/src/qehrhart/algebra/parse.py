"""Parser for the canonical text forms of QRat, XPoly and series numerators.

Accepts integer literals, the variables ``q``, ``x`` and ``t``, ``+ - * / ^``
and parentheses.  Division is allowed only by expressions free of ``x`` and ``t``.
"""

from __future__ import annotations

import re

from .qrat import QRat, q
from .xpoly import XPoly

__all__ = ["ParseError", "parse_qrat", "parse_xpoly", "parse_tpoly"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([qxt])|(\S))")

# (x exponent, t exponent) -> coefficient
Terms = dict[tuple[int, int], QRat]


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if m.group(3) and tok not in "+-*/^()":
            raise ParseError(f"unexpected character {tok!r}")
        out.append(tok)
        pos = m.end()
    return out


def _add(a: Terms, b: Terms, sign: int = 1) -> Terms:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, QRat()) + (v if sign > 0 else -v)
        if out[k].is_zero():
            del out[k]
    return out


def _mul(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for (xa, ta), va in a.items():
        for (xb, tb), vb in b.items():
            key = (xa + xb, ta + tb)
            out[key] = out.get(key, QRat()) + va * vb
            if out[key].is_zero():
                del out[key]
    return out


def _scalar(t: Terms) -> QRat:
    if any(k != (0, 0) for k in t):
        raise ParseError("division by a non-scalar expression")
    return t.get((0, 0), QRat())


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Terms:
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return out

    def expr(self) -> Terms:
        acc = self.term()
        while self.peek() in ("+", "-"):
            sign = 1 if self.take() == "+" else -1
            acc = _add(acc, self.term(), sign)
        return acc

    def term(self) -> Terms:
        acc = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                acc = _mul(acc, rhs)
            else:
                s = _scalar(rhs)
                if s.is_zero():
                    raise ParseError("division by zero")
                acc = {k: v / s for k, v in acc.items()}
        return acc

    def unary(self) -> Terms:
        if self.peek() == "-":
            self.take()
            return {k: -v for k, v in self.unary().items()}
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Terms:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise ParseError("exponent must be an integer literal")
            e = int(tok)
            if neg:
                return {(0, 0): _scalar(base) ** (-e)}
            out: Terms = {(0, 0): QRat(1)}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> Terms:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok.isdigit():
            v = int(tok)
            return {(0, 0): QRat(v)} if v else {}
        if tok == "q":
            return {(0, 0): q}
        if tok == "x":
            return {(1, 0): QRat(1)}
        if tok == "t":
            return {(0, 1): QRat(1)}
        raise ParseError(f"unexpected token {tok!r}")


def parse_qrat(text: str) -> QRat:
    return _scalar(_Parser(text).parse())


def _univariate(terms: Terms, axis: int, name: str) -> list[QRat]:
    if any(k[1 - axis] != 0 for k in terms):
        raise ParseError(f"expression is not a polynomial in {name} alone")
    deg = max((k[axis] for k in terms), default=-1)
    out = [QRat()] * (deg + 1)
    for k, v in terms.items():
        out[k[axis]] = v
    return out


def parse_xpoly(text: str) -> XPoly:
    return XPoly(_univariate(_Parser(text).parse(), 0, "x"))


def parse_tpoly(text: str) -> list[QRat]:
    """Coefficients (by degree) of a polynomial in ``t`` over Q(q)."""
    return _univariate(_Parser(text).parse(), 1, "t")
