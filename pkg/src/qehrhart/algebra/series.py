"""Rational functions in ``t`` over Q(q) whose denominator is a product of
factors ``(1 - q^j t)``."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .qrat import QRat
from .xpoly import render_poly

__all__ = ["SeriesTQ"]


def _trim(cs: list[QRat]) -> list[QRat]:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _mul_factor(num: list[QRat], j: int) -> list[QRat]:
    """Multiply a t-polynomial by ``(1 - q^j t)``."""
    qj = QRat.q_power(j)
    out = list(num) + [QRat()]
    for k in range(len(num)):
        out[k + 1] = out[k + 1] - qj * num[k]
    return _trim(out)


def _eval_t(num: Sequence[QRat], t: QRat) -> QRat:
    acc = QRat()
    for c in reversed(num):
        acc = acc * t + c
    return acc


def _div_factor(num: list[QRat], j: int) -> list[QRat]:
    """Exact quotient of a t-polynomial by ``(1 - q^j t)`` (caller checks the root)."""
    qj = QRat.q_power(j)
    out: list[QRat] = []
    prev = QRat()
    for c in num[:-1]:
        prev = c + qj * prev
        out.append(prev)
    return _trim(out)


class SeriesTQ:
    """``numerator(t) / prod_j (1 - q^j t)`` in canonical form.

    Construction cancels every denominator factor that divides the numerator,
    so two equal rational functions have equal ``numerator`` and ``exponents``.
    """

    __slots__ = ("numerator", "exponents")

    def __init__(self, numerator: Iterable = (1,), exponents: Iterable[int] = ()):
        num = _trim([c if isinstance(c, QRat) else QRat(c) for c in numerator])
        exps = sorted(exponents)
        if any(j < 0 for j in exps):
            raise ValueError("denominator exponents must be nonnegative")
        changed = True
        while changed and num:
            changed = False
            for j in sorted(set(exps)):
                if _eval_t(num, QRat.q_power(-j)).is_zero():
                    num = _div_factor(num, j)
                    exps.remove(j)
                    changed = True
                    break
        if not num:
            exps = []
        self.numerator: tuple[QRat, ...] = tuple(num)
        self.exponents: tuple[int, ...] = tuple(exps)

    @classmethod
    def from_partial_fractions(cls, coeffs: Sequence[QRat]) -> SeriesTQ:
        """``sum_j coeffs[j] / (1 - q^j t)``."""
        js = [j for j, c in enumerate(coeffs) if not c.is_zero()]
        num: list[QRat] = []
        for j in js:
            term = [coeffs[j]]
            for i in js:
                if i != j:
                    term = _mul_factor(term, i)
            num = _add(num, term)
        return cls(num, js)

    @classmethod
    def sum(cls, terms: Iterable[SeriesTQ]) -> SeriesTQ:
        """Sum over a common denominator with a single final canonicalization."""
        terms = list(terms)
        common: Counter[int] = Counter()
        for s in terms:
            for j, mult in Counter(s.exponents).items():
                common[j] = max(common[j], mult)
        num: list[QRat] = []
        for s in terms:
            missing = common - Counter(s.exponents)
            term = list(s.numerator)
            for j in sorted(missing.elements()):
                term = _mul_factor(term, j)
            num = _add(num, term)
        return cls(num, common.elements())

    def numerator_over(self, exponents: Iterable[int]) -> list[QRat]:
        """Numerator relative to a prescribed denominator that the canonical one divides."""
        missing = Counter(exponents) - Counter(self.exponents)
        if Counter(self.exponents) - Counter(exponents):
            raise ValueError("prescribed denominator is not a multiple of the canonical one")
        num = list(self.numerator)
        for j in sorted(missing.elements()):
            num = _mul_factor(num, j)
        return num

    def __add__(self, other: SeriesTQ) -> SeriesTQ:
        return SeriesTQ.sum([self, other])

    def __neg__(self) -> SeriesTQ:
        return SeriesTQ([-c for c in self.numerator], self.exponents)

    def __sub__(self, other: SeriesTQ) -> SeriesTQ:
        return self + (-other)

    def scale(self, c: QRat) -> SeriesTQ:
        return SeriesTQ([c * a for a in self.numerator], self.exponents)

    def divide_by_factor(self, j: int) -> SeriesTQ:
        """Divide by ``(1 - q^j t)``."""
        return SeriesTQ(self.numerator, self.exponents + (j,))

    def multiply_by_factor(self, j: int) -> SeriesTQ:
        return SeriesTQ(_mul_factor(list(self.numerator), j), self.exponents)

    def substitute(self, t_shift: int = 0, invert_q: bool = False) -> SeriesTQ:
        """The series ``S(q^t_shift * t, q)``, or ``S(q^t_shift * t, 1/q)`` when ``invert_q``.

        Inversion happens first; the shift refers to the final variable q.
        Every resulting denominator exponent must stay nonnegative.
        """
        num = []
        for k, c in enumerate(self.numerator):
            c = c.invert_q() if invert_q else c
            num.append(c * QRat.q_power(k * t_shift))
        exps = [(-j if invert_q else j) + t_shift for j in self.exponents]
        return SeriesTQ(num, exps)

    def taylor(self, order: int) -> list[QRat]:
        """Coefficients of ``t^0 .. t^order``."""
        expansion = [QRat(1)] + [QRat()] * order
        for j in self.exponents:
            qj = QRat.q_power(j)
            for k in range(1, order + 1):
                expansion[k] = expansion[k] + qj * expansion[k - 1]
        out = []
        for n in range(order + 1):
            acc = QRat()
            for k in range(min(n, len(self.numerator) - 1) + 1):
                acc = acc + self.numerator[k] * expansion[n - k]
            out.append(acc)
        return out

    def is_squarefree(self) -> bool:
        return len(set(self.exponents)) == len(self.exponents)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesTQ):
            return NotImplemented
        return self.numerator == other.numerator and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.numerator, self.exponents))

    def numerator_str(self) -> str:
        return render_poly(self.numerator, "t", ascending=True)

    def denominator_str(self) -> str:
        if not self.exponents:
            return "1"
        factors = []
        for j in self.exponents:
            factors.append("(1 - t)" if j == 0 else "(1 - q*t)" if j == 1 else f"(1 - q^{j}*t)")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.exponents:
            return self.numerator_str()
        return f"({self.numerator_str()}) / ({self.denominator_str()})"

    def __repr__(self) -> str:
        return f"SeriesTQ({self})"


def _add(a: list[QRat], b: list[QRat]) -> list[QRat]:
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else QRat()
        y = b[k] if k < len(b) else QRat()
        out.append(x + y)
    return _trim(out)
