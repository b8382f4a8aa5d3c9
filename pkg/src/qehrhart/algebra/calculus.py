"""Interpolation at q-integers, the y-basis, the Hahn q-difference operator and
Carlitz q-Bernoulli numbers."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

from flint import fmpz_poly

from .qrat import QRat, q
from .xpoly import XPoly, qint

__all__ = [
    "cyclotomic",
    "eval_at_qint",
    "interpolate",
    "to_y_basis",
    "from_y_basis",
    "hahn_delta",
    "hahn_antiderivative",
    "carlitz_bernoulli",
    "umbra",
    "Y",
]

# y = 1 + (q - 1) x, the polynomial whose value at [n]_q is q^n
Y = XPoly([1, q - 1])


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    poly = fmpz_poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            quo, rem = divmod(poly, fmpz_poly(list(_cyclotomic(d))))
            assert rem == 0
            poly = quo
    return tuple(int(c) for c in poly.coeffs())


def cyclotomic(n: int) -> fmpz_poly:
    """The cyclotomic polynomial Phi_n in ``q``, by exact division of ``q^n - 1``."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    return fmpz_poly(list(_cyclotomic(n)))


def eval_at_qint(f: XPoly, n: int) -> QRat:
    return f(qint(n))


def interpolate(nodes: Sequence[tuple[QRat, QRat]]) -> XPoly:
    """Unique polynomial of degree < len(nodes) through the given (abscissa, ordinate) pairs.

    Newton divided differences, then expansion to the monomial basis.
    """
    xs = [QRat(a) for a, _ in nodes]
    if len(set(xs)) != len(xs):
        raise ValueError("degenerate interpolation nodes")
    table = [QRat(b) for _, b in nodes]
    k = len(xs)
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])
    out = XPoly()
    for i in range(k - 1, -1, -1):
        out = out * XPoly([-xs[i], 1]) + table[i]
    return out


def to_y_basis(f: XPoly) -> list[QRat]:
    """Coefficients ``c`` with ``f = sum_j c[j] * y**j`` where ``y = 1 + (q-1)x``."""
    # x = (y - 1)/(q - 1)
    inv = (q - 1).inverse()
    return list(f.compose_affine(inv, -inv).coeffs)


def from_y_basis(c: Sequence[QRat]) -> XPoly:
    out = XPoly()
    for cj in reversed(list(c)):
        out = out * Y + cj
    return out


def hahn_delta(f: XPoly) -> XPoly:
    """``(f(1+qx) - f(x)) / (1 + qx - x)``; the division is always exact."""
    return (f.shift() - f) / Y


def hahn_antiderivative(g: XPoly) -> XPoly:
    """The unique multiple of ``1 + qx`` whose Hahn difference is ``g``."""
    c = to_y_basis(g)
    lifted = [QRat()] + [cj / (QRat.q_power(j + 1) - 1) for j, cj in enumerate(c)]
    f = from_y_basis(lifted)
    return f - f(-QRat.q_power(-1))


@lru_cache(maxsize=None)
def carlitz_bernoulli(n: int) -> QRat:
    """Carlitz q-Bernoulli number: beta_0 = 1 and q(q*beta + 1)^n - beta_n = [n == 1]."""
    if n < 0:
        raise ValueError("index must be >= 0")
    if n == 0:
        return QRat(1)
    rhs = QRat(1 if n == 1 else 0)
    for k in range(n):
        rhs = rhs - q * comb(n, k) * QRat.q_power(k) * carlitz_bernoulli(k)
    return rhs / (QRat.q_power(n + 1) - 1)


def umbra(f: XPoly) -> QRat:
    """Linear form sending ``x**n`` to the Carlitz number beta_n."""
    out = QRat()
    for n, a in enumerate(f.coeffs):
        if not a.is_zero():
            out = out + a * carlitz_bernoulli(n)
    return out
