"""Exact arithmetic over Q(q): scalars, polynomials in x, t-series and q-calculus."""

from .calculus import (
    Y,
    carlitz_bernoulli,
    cyclotomic,
    eval_at_qint,
    from_y_basis,
    hahn_antiderivative,
    hahn_delta,
    interpolate,
    to_y_basis,
    umbra,
)
from .parse import ParseError, parse_qrat, parse_tpoly, parse_xpoly
from .qrat import QRat, poly_str, q
from .series import SeriesTQ
from .xpoly import XPoly, qbinom, qfactorial, qint, render_poly

__all__ = [
    "QRat",
    "XPoly",
    "SeriesTQ",
    "ParseError",
    "Y",
    "q",
    "qint",
    "qbinom",
    "qfactorial",
    "cyclotomic",
    "eval_at_qint",
    "interpolate",
    "to_y_basis",
    "from_y_basis",
    "hahn_delta",
    "hahn_antiderivative",
    "carlitz_bernoulli",
    "umbra",
    "poly_str",
    "render_poly",
    "parse_qrat",
    "parse_xpoly",
    "parse_tpoly",
]
