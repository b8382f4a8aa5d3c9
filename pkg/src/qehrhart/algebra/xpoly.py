"""Polynomials in one variable with QRat coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .qrat import QRat, q

__all__ = ["XPoly", "render_poly", "qint", "qfactorial", "qbinom"]


def qint(n: int) -> QRat:
    """The q-integer ``(q**n - 1)/(q - 1)``; a Laurent value for negative ``n``."""
    if n >= 0:
        return QRat([1] * n) if n else QRat()
    # [-n]_q = -q^{-n} [n]_q
    return -QRat.q_power(n) * qint(-n)


def qfactorial(n: int) -> QRat:
    out = QRat(1)
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


def qbinom(n: int, m: int) -> QRat:
    """Gaussian binomial coefficient; zero outside ``0 <= m <= n``."""
    if m < 0 or n < 0 or m > n:
        return QRat()
    # q-Pascal: [n, m] = [n-1, m-1] + q^m [n-1, m]
    row = [QRat(1)]
    for k in range(1, n + 1):
        new = [QRat(1)] * (k + 1)
        for j in range(1, k):
            new[j] = row[j - 1] + QRat.q_power(j) * row[j]
        row = new
    return row[m]


def _coef_str(c: QRat) -> tuple[str, bool]:
    """String for a coefficient and whether it is a signed monomial (no parens needed)."""
    if c.is_integral_polynomial() and c.term_count() == 1:
        return str(c), True
    return f"({c})", False


def render_poly(coeffs: Sequence[QRat], var: str, ascending: bool = False) -> str:
    """Canonical text of ``sum coeffs[k] * var^k``, terms in decreasing degree
    (increasing when ``ascending``, as for series numerators)."""
    parts: list[str] = []
    nonzero = [k for k, c in enumerate(coeffs) if not c.is_zero()]
    if not nonzero:
        return "0"
    if len(nonzero) == 1 and nonzero[0] == 0:
        return str(coeffs[0])
    for k in (nonzero if ascending else reversed(nonzero)):
        c = coeffs[k]
        text, simple = _coef_str(c)
        neg = simple and text.startswith("-")
        if neg:
            text = text[1:]
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono:
            if simple and text == "1":
                body = mono
            else:
                body = f"{text}*{mono}"
        else:
            body = text
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class XPoly:
    """A polynomial in ``x`` over Q(q), stored as a coefficient tuple by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, QRat) else QRat(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[QRat, ...] = tuple(cs)

    @classmethod
    def x(cls) -> XPoly:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> XPoly:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree in ``x``; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> QRat:
        return self.coeffs[-1] if self.coeffs else QRat()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> QRat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else QRat()

    def _coerce(self, other) -> XPoly | None:
        if isinstance(other, XPoly):
            return other
        if isinstance(other, (QRat, int, Fraction)):
            return XPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return XPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> XPoly:
        return XPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return XPoly()
        out = [QRat()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> XPoly:
        out = XPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        """Division by a scalar, or exact division by a polynomial."""
        if isinstance(other, XPoly):
            quo, rem = self.divmod(other)
            if not rem.is_zero():
                raise ArithmeticError("inexact polynomial division")
            return quo
        s = other if isinstance(other, QRat) else QRat(other)
        inv = s.inverse()
        return XPoly(c * inv for c in self.coeffs)

    def divmod(self, other: XPoly) -> tuple[XPoly, XPoly]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = other.lead.inverse()
        quo = [QRat()] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            if c.is_zero():
                continue
            quo[k - dq] = c
            for i, b in enumerate(other.coeffs):
                rem[k - dq + i] = rem[k - dq + i] - c * b
        return XPoly(quo), XPoly(rem[:dq])

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, value) -> QRat:
        """Horner evaluation at a QRat (or int/Fraction) argument."""
        v = value if isinstance(value, QRat) else QRat(value)
        acc = QRat()
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def compose_affine(self, a, b) -> XPoly:
        """``f(a*x + b)``."""
        lin = XPoly([b, a])
        acc = XPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def shift(self) -> XPoly:
        """``f(1 + q*x)``, whose value at ``[n]_q`` is ``f([n+1]_q)``."""
        return self.compose_affine(q, 1)

    def at_one(self) -> list[Fraction]:
        """Coefficientwise specialization ``q = 1``."""
        return [c.at_one() for c in self.coeffs]

    def __str__(self) -> str:
        return render_poly(self.coeffs, "x")

    def __repr__(self) -> str:
        return f"XPoly({self})"
