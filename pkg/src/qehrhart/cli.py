"""Command-line front end.

Exit codes: 0 success, 1 Positivity/Genericity violation, 2 unreadable input
or a cyclic poset, 3 precondition failure, 4 failed verification or internal
cross-check.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .algebra import QRat, SeriesTQ, XPoly, carlitz_bernoulli
from .ehrhart import (
    periodicity_certificate,
    qehrhart_polynomial,
    qehrhart_series,
    series_limit_t1,
    special_value,
    special_value_of,
    value_at_infinity,
)
from .errors import ConsistencyError, PreconditionError, ValidationError
from .polytope import check_pair, fmt_point, is_empty, lattice_points, polytope_from_json, weighted_sum
from .poset import descent_numerator, order_polytope, poset_from_json, q_volume

log = logging.getLogger("qehrhart")

EXIT_INVALID, EXIT_PARSE, EXIT_PRECONDITION, EXIT_FAILED = 1, 2, 3, 4


class InputError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


# -- rendering ------------------------------------------------------------------


def qrat_json(r: QRat) -> dict:
    from .algebra import poly_str

    return {"num": poly_str(r.num), "den": poly_str(r.den)}


def render_series(S: SeriesTQ, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({
            "numerator": S.numerator_str(),
            "denominator_exponents": list(S.exponents),
            "coefficients": [qrat_json(c) for c in S.numerator],
        })
    return f"numerator: {S.numerator_str()}\ndenominator_exponents: {list(S.exponents)}"


def render_xpoly(L: XPoly, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"polynomial": str(L), "coefficients": [qrat_json(c) for c in L.coeffs]})
    return str(L)


def render_qrat(r: QRat, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"value": str(r), **qrat_json(r)})
    return str(r)


# -- commands ----------------------------------------------------------------------


def run_polytope(args) -> str:
    try:
        Q, lam = polytope_from_json(_load_json(args.input))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for p in Q.stripped:
        log.warning("ignoring non-extreme point %s", fmt_point(p))
    check_pair(Q, lam)
    action = args.action
    if action == "series":
        return render_series(qehrhart_series(Q, lam), args.format)
    if action == "poly":
        return render_xpoly(qehrhart_polynomial(Q, lam), args.format)
    if action == "special-value":
        return render_qrat(special_value(Q, lam), args.format)
    if action == "points":
        n = 1 if args.n is None else args.n
        if n < 0:
            raise PreconditionError("--n must be >= 0")
        pts = lattice_points(Q, n)
        total = weighted_sum(pts, lam)
        if args.format == "json":
            return json.dumps({"n": n, "points": [list(p) for p in pts], "weighted_sum": str(total)})
        return "\n".join([fmt_point(p) for p in pts] + [f"weighted_sum: {total}"])
    if action == "certify":
        if args.N is None:
            raise PreconditionError("certify needs --N")
        n = 1 if args.n is None else args.n
        ks = args.k or [1, 2]
        ok = periodicity_certificate(Q, lam, n, args.N, ks)
        if args.format == "json":
            return json.dumps({"n": n, "N": args.N, "k": ks, "certified": ok})
        return "true" if ok else "false"
    raise AssertionError(action)


def run_poset(args) -> str:
    try:
        P = poset_from_json(_load_json(args.input))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    action = args.action
    if action == "series":
        S = descent_numerator(P)
        if args.cross_check and S != qehrhart_series(*order_polytope(P)):
            raise ConsistencyError("descent numerator disagrees with the geometric series")
        return render_series(S, args.format)
    Q, lam = order_polytope(P)
    L = qehrhart_polynomial(Q, lam)
    if action == "poly":
        return render_xpoly(L, args.format)
    if action == "volume":
        return render_qrat(q_volume(P, L), args.format)
    if action == "special-value":
        if not is_empty(Q):
            raise PreconditionError("special value needs a polytope with no interior lattice point")
        return render_qrat(special_value_of(L), args.format)
    if action == "infinity":
        value = value_at_infinity(L)
        if value != series_limit_t1(qehrhart_series(Q, lam, L)):
            raise ConsistencyError("value at infinity disagrees with the series limit at t=1")
        return render_qrat(value, args.format)
    raise AssertionError(action)


def run_bernoulli(args) -> str:
    if args.N < 0:
        raise PreconditionError("N must be >= 0")
    rows = []
    for n in range(args.N + 1):
        b = carlitz_bernoulli(n)
        rows.append((n, b, b.at_one()))
    if args.format == "json":
        return json.dumps([{"n": n, "beta": str(b), "at_q_1": str(v)} for n, b, v in rows])
    return "\n".join(f"{n}\t{b}\t{v}" for n, b, v in rows)


def run_verify(args) -> tuple[str, bool]:
    from .verify import run

    checks = run(args.scope, args.seed)
    failed = [c for c in checks if not c.ok]
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return "\n".join(lines), not failed


# -- argument parsing --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qehrhart", description="Exact q-Ehrhart computations.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    poly = sub.add_parser("polytope", help="a lattice polytope with a linear form")
    poly.add_argument("action", choices=["series", "poly", "special-value", "points", "certify"])
    poly.add_argument("--input", required=True, help='JSON {"dim", "vertices", "lambda"}')
    poly.add_argument("--n", type=int, help="dilation factor (points, certify)")
    poly.add_argument("--N", type=int, help="period to certify")
    poly.add_argument("--k", type=int, nargs="+", help="sampled k values for certify")
    poly.add_argument("--format", choices=["text", "json"], default="text")

    pos = sub.add_parser("poset", help="order polytope of a finite poset")
    pos.add_argument("action", choices=["series", "poly", "volume", "special-value", "infinity"])
    pos.add_argument("--input", required=True, help='JSON {"size", "covers"}')
    pos.add_argument("--cross-check", action="store_true", help="compare series with the geometric route")
    pos.add_argument("--format", choices=["text", "json"], default="text")

    ber = sub.add_parser("bernoulli", help="Carlitz q-Bernoulli numbers beta_0..beta_N")
    ber.add_argument("N", type=int)
    ber.add_argument("--format", choices=["text", "json"], default="text")

    ver = sub.add_parser("verify", help="run the built-in identity suites")
    ver.add_argument("--scope", choices=["all", "polytopes", "posets", "umbral"], default="all")
    ver.add_argument("--seed", type=int, default=7)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "verify":
            out, ok = run_verify(args)
            print(out)
            return 0 if ok else EXIT_FAILED
        runner = {"polytope": run_polytope, "poset": run_poset, "bernoulli": run_bernoulli}[args.command]
        print(runner(args))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        for v in exc.violations:
            print(v, file=sys.stderr)
        return EXIT_INVALID
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConsistencyError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    return 0


if __name__ == "__main__":
    sys.exit(main())
