"""q-Ehrhart polynomials and series, reciprocity, special values and limits."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from flint import fmpz_poly

from .algebra import (
    QRat,
    SeriesTQ,
    XPoly,
    cyclotomic,
    interpolate,
    q,
    qint,
    to_y_basis,
)
from .errors import ConsistencyError, PreconditionError
from .polytope import (
    LatticePolytope,
    LinearForm,
    check_pair,
    histogram_to_qrat,
    is_empty,
    weight_histogram,
)

__all__ = [
    "EhrhartData",
    "w_poly",
    "w_interior",
    "qehrhart_polynomial",
    "qehrhart_series",
    "ehrhart_data",
    "reciprocity_residual",
    "special_value",
    "has_simple_cyclotomic_poles",
    "value_at_infinity",
    "series_limit_t1",
    "periodicity_certificate",
    "specialize_at_one",
    "classical_ehrhart",
    "poles_at_small_roots_of_unity",
]


def w_poly(Q: LatticePolytope, lam: LinearForm, n: int) -> QRat:
    """Weighted sum ``sum q^lambda(x)`` over the lattice points of ``nQ``."""
    if n < 0:
        raise ValueError("dilation factor must be >= 0")
    return histogram_to_qrat(weight_histogram(Q, lam, n))


def w_interior(Q: LatticePolytope, lam: LinearForm, n: int, inverse_q: bool = False) -> QRat:
    return histogram_to_qrat(weight_histogram(Q, lam, n, interior=True), inverse_q)


def qehrhart_polynomial(Q: LatticePolytope, lam: LinearForm) -> XPoly:
    """Interpolate the weighted sums of nQ, n = 0..m, at the q-integers [n]_q.

    Two further dilates (m+1, m+2) are checked against the result.
    """
    check_pair(Q, lam)
    m = max(lam(v) for v in Q.vertices)
    L = interpolate([(qint(n), w_poly(Q, lam, n)) for n in range(m + 1)])
    if L.degree != m:
        raise ConsistencyError(f"q-Ehrhart polynomial has degree {L.degree}, expected {m}")
    for n in (m + 1, m + 2):
        if L(qint(n)) != w_poly(Q, lam, n):
            raise ConsistencyError(f"interpolated polynomial disagrees with enumeration at n={n}")
    return L


def series_from_polynomial(L: XPoly) -> SeriesTQ:
    """``sum_n L([n]_q) t^n`` via the y-basis: ``y^j`` contributes ``1/(1 - q^j t)``."""
    return SeriesTQ.from_partial_fractions(to_y_basis(L))


def qehrhart_series(Q: LatticePolytope, lam: LinearForm, L: XPoly | None = None) -> SeriesTQ:
    if L is None:
        L = qehrhart_polynomial(Q, lam)
    S = series_from_polynomial(L)
    values = {lam(v) for v in Q.vertices}
    if not S.is_squarefree() or not set(S.exponents) <= values:
        raise ConsistencyError(f"series denominator {S.exponents} not among vertex values {sorted(values)}")
    if not {min(values), max(values)} <= set(S.exponents):
        raise ConsistencyError("series denominator lacks the extreme lambda values")
    return S


@dataclass(frozen=True)
class EhrhartData:
    polytope: LatticePolytope
    form: LinearForm
    m: int
    d: int
    polynomial: XPoly
    series: SeriesTQ


def ehrhart_data(Q: LatticePolytope, lam: LinearForm) -> EhrhartData:
    L = qehrhart_polynomial(Q, lam)
    return EhrhartData(
        polytope=Q,
        form=lam,
        m=max(lam(v) for v in Q.vertices),
        d=Q.affine_dim,
        polynomial=L,
        series=qehrhart_series(Q, lam, L),
    )


def reciprocity_residual(Q: LatticePolytope, lam: LinearForm, n: int, L: XPoly | None = None) -> QRat:
    """``L([-n]_q) - (-1)^d W(int(nQ), 1/q)``; zero by reciprocity."""
    if n < 1:
        raise ValueError("reciprocity needs n >= 1")
    if L is None:
        L = qehrhart_polynomial(Q, lam)
    sign = -1 if Q.affine_dim % 2 else 1
    return L(qint(-n)) - sign * w_interior(Q, lam, n, inverse_q=True)


_ONE_PLUS_QX = XPoly([1, q])


def special_value(Q: LatticePolytope, lam: LinearForm, L: XPoly | None = None) -> QRat:
    """``L / (1 + qx)`` evaluated at ``x = -1/q``, for polytopes without interior points."""
    if not is_empty(Q):
        raise PreconditionError("special value needs a polytope with no interior lattice point")
    if L is None:
        L = qehrhart_polynomial(Q, lam)
    return special_value_of(L)


def special_value_of(L: XPoly) -> QRat:
    quo, rem = L.divmod(_ONE_PLUS_QX)
    if not rem.is_zero():
        raise ConsistencyError("1 + qx does not divide the q-Ehrhart polynomial")
    return quo(-QRat.q_power(-1))


def _strip_q(p: fmpz_poly) -> fmpz_poly:
    coeffs = [int(c) for c in p.coeffs()]
    k = next(i for i, c in enumerate(coeffs) if c)
    return fmpz_poly(coeffs[k:])


def has_simple_cyclotomic_poles(r: QRat) -> bool:
    """True when the denominator, after removing powers of q, is squarefree."""
    den = _strip_q(r.den)
    if den.degree() <= 0:
        return True
    return den.gcd(den.derivative()).degree() == 0


def poles_at_small_roots_of_unity(r: QRat, bound: int) -> bool:
    """True when the denominator divides ``q^a * prod_{N <= bound} Phi_N^b``."""
    den = _strip_q(r.den)
    for N in range(1, bound + 1):
        phi = cyclotomic(N)
        while den.degree() > 0:
            quo, rem = divmod(den, phi)
            if rem != 0:
                break
            den = quo
    return den.degree() <= 0


def value_at_infinity(L: XPoly) -> QRat:
    """``L(1/(1-q))``, the limit of ``L([n]_q)`` as a power series in q."""
    return L((1 - q).inverse())


def series_limit_t1(S: SeriesTQ) -> QRat:
    """Value at ``t = 1`` of ``(1 - t) S``."""
    if S.exponents.count(0) != 1:
        raise PreconditionError("series must have exactly one factor (1 - t)")
    num = QRat()
    for c in S.numerator:
        num = num + c
    den = QRat(1)
    for j in S.exponents:
        if j:
            den = den * (1 - QRat.q_power(j))
    return num / den


def periodicity_certificate(
    Q: LatticePolytope, lam: LinearForm, n: int, N: int, sample_ks, L: XPoly | None = None
) -> bool:
    """True when Phi_N divides the numerator of ``L([-n + kN]_q)`` for every sampled k."""
    m = max(lam(v) for v in Q.vertices)
    if N <= m:
        raise PreconditionError(f"period N={N} must exceed max lambda = {m}")
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if w_interior(Q, lam, n) != 0:
        raise PreconditionError(f"interior of {n}Q contains lattice points")
    if L is None:
        L = qehrhart_polynomial(Q, lam)
    phi = cyclotomic(N)
    for k in sample_ks:
        value = L(qint(-n + k * N))
        if divmod(value.num, phi)[1] != 0:
            return False
    return True


# -- q = 1 ------------------------------------------------------------------


def _interpolate_integers(values: list[int]) -> list[Fraction]:
    """Monomial coefficients of the polynomial through (n, values[n])."""
    out: list[Fraction] = []
    table = [Fraction(v) for v in values]
    k = len(table)
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / level
    for i in range(k - 1, -1, -1):
        # out = out * (x - i) + table[i]
        new = [Fraction(0)] * (len(out) + 1)
        for j, c in enumerate(out):
            new[j + 1] += c
            new[j] -= i * c
        new[0] += table[i]
        out = new
    while out and out[-1] == 0:
        out.pop()
    return out


def specialize_at_one(L: XPoly) -> list[Fraction]:
    """Classical polynomial obtained at q = 1, by re-interpolating the values
    ``L([n]_q)|_{q=1}`` at the integer nodes n = 0..deg L."""
    vals = [L(qint(n)).at_one() for n in range(max(L.degree, 0) + 1)]
    return _interpolate_integers([int(v) for v in vals])


def classical_ehrhart(Q: LatticePolytope) -> list[Fraction]:
    """Classical Ehrhart polynomial from plain point counts at n = 0..affine_dim."""
    counts = []
    for n in range(Q.affine_dim + 1):
        counts.append(sum(weight_histogram(Q, LinearForm([0] * Q.dim), n).values()))
    return _interpolate_integers(counts)
