"""Rational functions of ``q`` with integer coefficients, kept in canonical form."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from flint import fmpq, fmpz_poly

__all__ = ["QRat", "q", "poly_str"]


def _as_poly(value) -> fmpz_poly:
    if isinstance(value, fmpz_poly):
        return value
    if isinstance(value, int):
        return fmpz_poly([value])
    return fmpz_poly(list(value))


def _lead(p: fmpz_poly) -> int:
    return int(p[p.degree()])


def poly_str(p: fmpz_poly, var: str = "q") -> str:
    """Render an integer polynomial with terms in decreasing degree, e.g. ``q^2 - 3*q + 1``."""
    coeffs = [int(c) for c in p.coeffs()]
    parts: list[str] = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


class QRat:
    """An element of Q(q) stored as ``num / den`` with ``num, den`` in Z[q].

    The representation is canonical: ``num`` and ``den`` share no
    non-constant factor, their joint integer content is 1, and ``den`` has a
    positive leading coefficient.  Structural equality is therefore equality
    of rational functions.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, QRat):
            n, d = num.num, num.den
            if not (isinstance(den, int) and den == 1):
                other = QRat(den)
                n, d = n * other.den, d * other.num
        elif isinstance(num, Fraction):
            n, d = fmpz_poly([num.numerator]), fmpz_poly([num.denominator])
            d = d * _as_poly(den)
        else:
            n, d = _as_poly(num), _as_poly(den)
        self.num, self.den = self._canonical(n, d)
        self._hash = None

    @staticmethod
    def _canonical(n: fmpz_poly, d: fmpz_poly) -> tuple[fmpz_poly, fmpz_poly]:
        if d == 0:
            raise ZeroDivisionError("QRat with zero denominator")
        if n == 0:
            return fmpz_poly([0]), fmpz_poly([1])
        if d.degree() > 0 and n.degree() > 0:
            g = n.gcd(d)
            if g.degree() > 0:
                n = n // g
                d = d // g
        c = gcd(int(n.content()), int(d.content()))
        if _lead(d) < 0:
            c = -c
        if c != 1:
            # exact: c divides every coefficient of both
            n = fmpz_poly([int(x) // c for x in n.coeffs()])
            d = fmpz_poly([int(x) // c for x in d.coeffs()])
        return n, d

    @classmethod
    def _raw(cls, n: fmpz_poly, d: fmpz_poly) -> QRat:
        obj = cls.__new__(cls)
        obj.num, obj.den = n, d
        obj._hash = None
        return obj

    @classmethod
    def q_power(cls, k: int) -> QRat:
        """``q**k`` for any integer ``k``."""
        if k >= 0:
            return cls._raw(fmpz_poly([0] * k + [1]), fmpz_poly([1]))
        return cls._raw(fmpz_poly([1]), fmpz_poly([0] * (-k) + [1]))

    # predicates and accessors

    def is_zero(self) -> bool:
        return self.num == 0

    def is_polynomial(self) -> bool:
        """True when the denominator is a constant, i.e. the value lies in Q[q]."""
        return self.den.degree() == 0

    def is_integral_polynomial(self) -> bool:
        return self.den == 1

    def numerator_coeffs(self) -> list[int]:
        return [int(c) for c in self.num.coeffs()] or [0]

    def denominator_coeffs(self) -> list[int]:
        return [int(c) for c in self.den.coeffs()]

    def term_count(self) -> int:
        return sum(1 for c in self.num.coeffs() if c != 0)

    # arithmetic

    def _coerce(self, other) -> QRat | None:
        if isinstance(other, QRat):
            return other
        if isinstance(other, (int, Fraction)):
            return QRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return QRat(self.num + o.num, self.den)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> QRat:
        return QRat._raw(-self.num, self.den)

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
        if self.den == 1 and o.den == 1:
            prod = self.num * o.num
            return QRat._raw(prod, self.den) if prod != 0 else QRat()
        return QRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> QRat:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QRat")
        return QRat(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> QRat:
        if k < 0:
            return self.inverse() ** (-k)
        return QRat._raw(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self.numerator_coeffs()), tuple(self.denominator_coeffs())))
        return self._hash

    # substitutions

    def evaluate(self, value) -> Fraction:
        """Exact value at a rational ``q``; raises ZeroDivisionError at a pole."""
        v = fmpq(Fraction(value).numerator, Fraction(value).denominator)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"pole at q = {value}")
        r = self.num(v) / d
        return Fraction(int(r.p), int(r.q))

    def at_one(self) -> Fraction:
        return self.evaluate(1)

    def invert_q(self) -> QRat:
        """Substitute ``q -> 1/q``."""
        dn, dd = max(self.num.degree(), 0), self.den.degree()
        rn = fmpz_poly(list(reversed(self.numerator_coeffs()))) if self.num != 0 else fmpz_poly([0])
        rd = fmpz_poly(list(reversed(self.denominator_coeffs())))
        shift = dd - dn
        if shift >= 0:
            rn = rn * fmpz_poly([0] * shift + [1])
        else:
            rd = rd * fmpz_poly([0] * (-shift) + [1])
        return QRat(rn, rd)

    def __str__(self) -> str:
        if self.den == 1:
            return poly_str(self.num)
        return f"({poly_str(self.num)}) / ({poly_str(self.den)})"

    def __repr__(self) -> str:
        return f"QRat({self})"


q = QRat([0, 1])
