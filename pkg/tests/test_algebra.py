from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from flint import fmpz_poly
from hypothesis import given, settings
from hypothesis import strategies as st

from qehrhart.algebra import (
    QRat,
    SeriesTQ,
    XPoly,
    Y,
    carlitz_bernoulli,
    cyclotomic,
    eval_at_qint,
    from_y_basis,
    hahn_antiderivative,
    hahn_delta,
    interpolate,
    q,
    qbinom,
    qfactorial,
    qint,
    to_y_basis,
    umbra,
)
from qehrhart.verify import classical_bernoulli

small_poly = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


@st.composite
def qrats(draw, nonzero=False):
    num = draw(small_poly)
    den = draw(small_poly.filter(lambda c: any(c)))
    r = QRat(num, den)
    if nonzero and r.is_zero():
        r = QRat(1)
    return r


@st.composite
def xpolys(draw, max_degree=4):
    return XPoly(draw(st.lists(qrats(), min_size=1, max_size=max_degree + 1)))


# -- QRat -----------------------------------------------------------------------


def test_canonical_form_reduces_and_normalizes():
    r = QRat([-2, 0, 2], [-4, 4])  # (2q^2 - 2) / (4q - 4) = (q + 1) / 2
    assert r.numerator_coeffs() == [1, 1]
    assert r.denominator_coeffs() == [2]
    assert QRat([1], [0, -1]) == -QRat.q_power(-1)
    assert QRat([0], [3, 1]).denominator_coeffs() == [1]


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        QRat(1, 0)
    with pytest.raises(ZeroDivisionError):
        QRat(1) / QRat(0)


def test_rendering():
    assert str(QRat([1, -3, 1])) == "q^2 - 3*q + 1"
    assert str(1 / (1 + q)) == "(1) / (q + 1)"
    assert str(QRat(Fraction(-1, 2))) == "(-1) / (2)"


@given(qrats(), qrats(), qrats())
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    if not b.is_zero():
        assert (a / b) * b == a


@given(qrats(), qrats())
@settings(max_examples=60, deadline=None)
def test_construction_order_is_irrelevant(a, b):
    assert a * b + b == (a + 1) * b
    assert hash(a * b) == hash(b * a)


@given(qrats(), st.integers(-3, 3))
@settings(max_examples=40, deadline=None)
def test_evaluate_matches_fraction_arithmetic(r, k):
    if r.den(k) == 0:
        return
    assert r.evaluate(k) == Fraction(int(r.num(k)), int(r.den(k)))


def test_invert_q():
    assert q.invert_q() == QRat.q_power(-1)
    assert (1 / (1 + q)).invert_q() == q / (1 + q)


# -- q-integers and friends ----------------------------------------------------------


def test_qint_examples():
    assert qint(0) == 0
    assert qint(2) == q + 1
    assert qint(-1) == -QRat.q_power(-1)


@pytest.mark.parametrize("n", range(-10, 11))
def test_qint_recursion(n):
    assert q * qint(n) + 1 == qint(n + 1)


def test_qbinom_examples():
    assert qbinom(2, 1) == q + 1
    assert qbinom(4, 2) == QRat([1, 1, 2, 1, 1])
    assert all(qbinom(n, 0) == 1 for n in range(6))
    assert qbinom(2, 3) == 0


def _inversion_count_oracle(n, m):
    """Gaussian binomial as sum over 0/1 words with m ones of q^inversions."""
    coeffs = [0] * (m * (n - m) + 1)
    for ones in combinations(range(n), m):
        inv = sum(1 for i in ones for j in range(i + 1, n) if j not in ones)
        coeffs[inv] += 1
    return QRat(coeffs)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(7) for m in range(n + 1)])
def test_qbinom_against_inversions(n, m):
    assert qbinom(n, m) == _inversion_count_oracle(n, m)
    assert qbinom(n, m) == qfactorial(n) / (qfactorial(m) * qfactorial(n - m))
    assert qbinom(n, m).at_one() == comb(n, m)


def test_cyclotomic():
    assert cyclotomic(1) == fmpz_poly([-1, 1])
    assert cyclotomic(2) == fmpz_poly([1, 1])
    assert cyclotomic(6) == fmpz_poly([1, -1, 1])
    for n in range(1, 16):
        prod = fmpz_poly([1])
        for d in range(1, n + 1):
            if n % d == 0:
                prod *= cyclotomic(d)
        assert prod == fmpz_poly([-1] + [0] * (n - 1) + [1])


# -- XPoly, interpolation, y-basis -------------------------------------------------------


def test_render_xpoly():
    assert str(XPoly([1, q])) == "q*x + 1"
    assert str(XPoly([0, 1 / (1 + q)])) == "((1) / (q + 1))*x"


def test_eval_at_qint_examples():
    f = XPoly([1, q])
    assert eval_at_qint(f, 1) == q + 1
    assert eval_at_qint(f, -1) == 0
    assert eval_at_qint(XPoly([1]), 7) == 1


def test_interpolate_examples():
    assert interpolate([(qint(0), QRat(1)), (qint(1), 1 + q)]) == XPoly([1, q])
    assert interpolate([(qint(0), QRat(1))]) == XPoly([1])
    collapse = interpolate([(qint(0), QRat(1)), (qint(1), 1 + q), (qint(2), 1 + q + q * q)])
    assert collapse == XPoly([1, q]) and collapse.degree == 1
    with pytest.raises(ValueError, match="degenerate interpolation nodes"):
        interpolate([(qint(1), QRat(1)), (qint(1), QRat(2))])


@given(xpolys())
@settings(max_examples=30, deadline=None)
def test_interpolation_reproduces_polynomial(f):
    nodes = [(qint(n), f(qint(n))) for n in range(max(f.degree, 0) + 1)]
    assert interpolate(nodes) == f


def test_y_basis_examples():
    assert to_y_basis(XPoly([1])) == [QRat(1)]
    assert to_y_basis(XPoly([1, q])) == [-1 / (q - 1), q / (q - 1)]
    assert to_y_basis(Y * Y) == [QRat(0), QRat(0), QRat(1)]


@given(xpolys(), st.integers(-4, 6))
@settings(max_examples=30, deadline=None)
def test_y_basis_roundtrip_and_evaluation(f, n):
    c = to_y_basis(f)
    assert from_y_basis(c) == f
    total = QRat()
    for j, cj in enumerate(c):
        total = total + cj * QRat.q_power(n * j)
    assert total == eval_at_qint(f, n)


@given(xpolys(max_degree=5), st.integers(-5, 5))
@settings(max_examples=30, deadline=None)
def test_shift_lemma(f, n):
    g = f.shift()
    assert g(qint(n)) == f(qint(n + 1))
    if f.degree >= 0:
        assert g.lead == f.lead * QRat.q_power(f.degree)


# -- Hahn calculus ----------------------------------------------------------------------


def test_hahn_examples():
    assert hahn_delta(XPoly([5 + q])).is_zero()
    assert hahn_delta(XPoly([1, q])) == XPoly([q])
    assert hahn_delta(Y * Y) == Y * (q * q - 1)
    assert hahn_antiderivative(XPoly([q])) == XPoly([1, q])
    assert hahn_antiderivative(XPoly([0])).is_zero()


@given(xpolys(), st.integers(0, 6))
@settings(max_examples=30, deadline=None)
def test_hahn_difference_on_qintegers(f, n):
    lhs = hahn_delta(f)(qint(n))
    rhs = (f(qint(n + 1)) - f(qint(n))) / QRat.q_power(n)
    assert lhs == rhs


@given(xpolys(max_degree=3))
@settings(max_examples=30, deadline=None)
def test_antiderivative_roundtrip(g):
    h = XPoly([1, q]) * g  # a multiple of 1 + qx
    assert hahn_antiderivative(hahn_delta(h)) == h
    F = hahn_antiderivative(g)
    assert hahn_delta(F) == g
    assert F(-QRat.q_power(-1)).is_zero()


# -- Carlitz numbers and the umbra ------------------------------------------------------------


def test_carlitz_examples():
    assert carlitz_bernoulli(0) == 1
    assert carlitz_bernoulli(1) == -1 / (q + 1)
    assert carlitz_bernoulli(2) == q / ((q + 1) * (q * q + q + 1))


@pytest.mark.parametrize("n", range(9))
def test_carlitz_specializes_to_bernoulli(n):
    assert carlitz_bernoulli(n).at_one() == classical_bernoulli(n)


def test_classical_bernoulli_table():
    known = [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42), 0, Fraction(-1, 30)]
    assert [classical_bernoulli(n) for n in range(9)] == known


@pytest.mark.parametrize("n", range(1, 9))
def test_carlitz_umbral_recurrence(n):
    # q (q beta + 1)^n - beta_n = [n == 1] with beta^k -> beta_k
    expansion = sum((comb(n, k) * QRat.q_power(k) * carlitz_bernoulli(k) for k in range(n + 1)), QRat())
    assert q * expansion - carlitz_bernoulli(n) == (1 if n == 1 else 0)


def test_umbra_examples():
    assert umbra(XPoly([1])) == 1
    assert umbra(XPoly([1, q])) == 1 / (q + 1)
    assert umbra(XPoly.x()) == -1 / (q + 1)


# -- SeriesTQ ---------------------------------------------------------------------------------


def test_series_canonical_cancellation():
    S = SeriesTQ([QRat(1), -q], [0, 1])  # (1 - qt) / ((1-t)(1-qt))
    assert S.exponents == (0,)
    assert S.numerator == (QRat(1),)


def test_series_rendering():
    S = SeriesTQ([QRat(1), QRat(0), -q ** 3], [0, 1, 2, 3])
    assert S.numerator_str() == "1 - q^3*t^2"
    assert str(SeriesTQ([1], [0, 1])) == "(1) / ((1 - t)*(1 - q*t))"


@pytest.mark.parametrize("j", range(7))
def test_partial_fraction_pair_cancels(j):
    # both terms depend on a = q^j t only; a stand-in transcendental for t (here
    # t = q, so a = q^(j+1)) makes this an identity of rational functions in a
    a = QRat.q_power(j + 1)
    assert 1 / (1 - a) + (1 / a) / (1 - 1 / a) == 0


@pytest.mark.parametrize("d", range(5))
def test_q_binomial_lemma(d):
    S = SeriesTQ([1], range(d + 1))
    taylor = S.taylor(6)
    product = XPoly([1])
    for j in range(1, d + 1):
        product = product * XPoly([qint(j), QRat.q_power(j)]) / qint(j)
    for n in range(7):
        assert taylor[n] == qbinom(d + n, n)
        assert taylor[n] == product(qint(n))


def test_series_substitute_and_sum():
    S = SeriesTQ([1], [0, 1])
    assert S.substitute(1, invert_q=True) == SeriesTQ([1], [1, 0])
    T = SeriesTQ.sum([SeriesTQ([1], [0]), SeriesTQ([q], [1])])
    assert T.taylor(3) == [a + b for a, b in zip(SeriesTQ([1], [0]).taylor(3), SeriesTQ([q], [1]).taylor(3))]
