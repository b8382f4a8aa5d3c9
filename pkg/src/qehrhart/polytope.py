"""Lattice polytopes in Z^d: hull facets, edges, lattice points of dilates and
the standard constructions (translate, reversal, pyramids)."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from flint import fmpz_poly

from .algebra import QRat
from .errors import PreconditionError, ValidationError
from .linalg import Vector, _echelon, dot, nullspace, primitive, rank

log = logging.getLogger(__name__)

__all__ = [
    "LinearForm",
    "Facet",
    "LatticePolytope",
    "make_polytope",
    "validate_pair",
    "check_pair",
    "lattice_points",
    "weighted_sum",
    "weight_histogram",
    "translate",
    "reverse",
    "pyramid",
    "bplus",
    "is_empty",
    "polytope_from_json",
    "polytope_to_json",
    "fmt_point",
]


def fmt_point(v: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Iterable[int]):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coefficients))

    def __call__(self, v: Sequence[int]) -> int:
        return dot(self.coefficients, v)

    def __len__(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class Facet:
    """The inequality ``normal . x <= offset``."""

    normal: Vector
    offset: int

    def value(self, v: Sequence[int]) -> int:
        return dot(self.normal, v)


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points, with its H-description computed eagerly.

    ``equations`` cut out the affine hull (``normal . x == offset``); ``facets``
    are irredundant inside it.  ``edges`` are index pairs into ``vertices``.
    """

    dim: int
    vertices: tuple[Vector, ...]
    affine_dim: int
    equations: tuple[Facet, ...]
    facets: tuple[Facet, ...]
    edges: tuple[tuple[int, int], ...]
    stripped: tuple[Vector, ...] = field(default=(), compare=False)

    def facet_vertices(self, facet: Facet) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.vertices) if facet.value(v) == facet.offset)

    def contains(self, x: Sequence[int], n: int = 1, interior: bool = False) -> bool:
        if any(e.value(x) != n * e.offset for e in self.equations):
            return False
        slack = 1 if interior else 0
        return all(f.value(x) <= n * f.offset - slack for f in self.facets)

    def lattice_points(self, n: int = 1, interior: bool = False) -> list[Vector]:
        return lattice_points(self, n, "interior" if interior else "closed")


# -- construction -----------------------------------------------------------


def _affine_hull(points: Sequence[Vector], dim: int) -> tuple[int, list[Facet], list[int]]:
    """(affine dimension, hull equations, coordinate indices injective on the hull)."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    if diffs:
        _, pivots = _echelon(diffs)
    else:
        pivots = []
    k = len(pivots)
    eqs = []
    for nvec in nullspace(diffs, dim) if diffs else nullspace([], dim):
        eqs.append(Facet(nvec, dot(nvec, p0)))
    return k, eqs, pivots


def _subset_dim(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def _hull_facets(points: Sequence[Vector], dim: int, k: int, coords: list[int]) -> list[Facet]:
    """Brute-force facet search: hyperplanes through k affinely independent points
    that leave every point on one side, computed in the injective coordinate chart."""
    proj = [tuple(p[c] for c in coords) for p in points]

    def lift(normal: Sequence[int]) -> Vector:
        full = [0] * dim
        for c, a in zip(coords, normal):
            full[c] = a
        return tuple(full)

    if k == 0:
        return []
    found: dict[tuple[Vector, int], None] = {}
    if k == 1:
        vals = [p[0] for p in proj]
        found[((1,), max(vals))] = None
        found[((-1,), -min(vals))] = None
    else:
        for subset in combinations(range(len(proj)), k):
            base = proj[subset[0]]
            diffs = [[a - b for a, b in zip(proj[i], base)] for i in subset[1:]]
            ns = nullspace(diffs, k)
            if len(ns) != 1:
                continue
            normal = ns[0]
            b = dot(normal, base)
            vals = [dot(normal, p) for p in proj]
            if all(v <= b for v in vals):
                found[(normal, b)] = None
            elif all(v >= b for v in vals):
                found[(tuple(-a for a in normal), -b)] = None
    return [Facet(lift(nv), b) for nv, b in found]


def _edges(vertices: Sequence[Vector], equations: Sequence[Facet], facets: Sequence[Facet], dim: int, k: int):
    if k == 0:
        return ()
    tight = [[f.value(v) == f.offset for f in facets] for v in vertices]
    eq_rows = [list(e.normal) for e in equations]
    edges = []
    for i, j in combinations(range(len(vertices)), 2):
        common = [list(f.normal) for f, a, b in zip(facets, tight[i], tight[j]) if a and b]
        if rank(eq_rows + common) == dim - 1:
            edges.append((i, j))
    return tuple(edges)


def _prune_facets(vertices: Sequence[Vector], facets: Iterable[Facet], k: int) -> list[Facet]:
    """Keep inequalities whose tight vertex set is a facet, one per facet."""
    seen: dict[frozenset[int], Facet] = {}
    for f in facets:
        vals = [f.value(v) for v in vertices]
        if any(val > f.offset for val in vals):
            raise ValueError(f"inequality {f} is violated by a vertex")
        tight = frozenset(i for i, val in enumerate(vals) if val == f.offset)
        if not tight or len(tight) == len(vertices) or tight in seen:
            continue
        if _subset_dim([vertices[i] for i in sorted(tight)]) == k - 1:
            seen[tight] = Facet(*_normalize(f.normal, f.offset))
    return list(seen.values())


def _normalize(normal: Sequence[int], offset: int) -> tuple[Vector, int]:
    prim = primitive(list(normal) + [offset])
    return tuple(prim[:-1]), prim[-1]


def make_polytope(dim: int, points: Iterable[Sequence[int]], strip: bool = True) -> LatticePolytope:
    """Convex hull of integer points.

    Points that are not extreme are dropped (and recorded in ``stripped``);
    with ``strip=False`` they raise ValueError instead.
    """
    pts: list[Vector] = []
    for p in points:
        t = tuple(int(c) for c in p)
        if len(t) != dim:
            raise ValueError(f"point {fmt_point(t)} has dimension {len(t)}, expected {dim}")
        if t not in pts:
            pts.append(t)
    if not pts:
        raise ValueError("empty point list")
    k, eqs, coords = _affine_hull(pts, dim)
    facets = _hull_facets(pts, dim, k, coords)
    eq_rows = [list(e.normal) for e in eqs]
    vertices, stripped = [], []
    for p in pts:
        rows = eq_rows + [list(f.normal) for f in facets if f.value(p) == f.offset]
        (vertices if rank(rows) == dim else stripped).append(p)
    if stripped:
        if not strip:
            raise ValueError("non-extreme points: " + ", ".join(fmt_point(p) for p in stripped))
        log.info("stripped non-extreme points %s", [fmt_point(p) for p in stripped])
    return _assemble(dim, vertices, eqs, facets, k, stripped)


def _assemble(dim, vertices, equations, inequalities, k=None, stripped=()) -> LatticePolytope:
    vertices = [tuple(v) for v in vertices]
    if k is None:
        k = _subset_dim(vertices)
    facets = _prune_facets(vertices, inequalities, k)
    eqs = [Facet(*_normalize(e.normal, e.offset)) for e in equations]
    return LatticePolytope(
        dim=dim,
        vertices=tuple(vertices),
        affine_dim=k,
        equations=tuple(eqs),
        facets=tuple(facets),
        edges=_edges(vertices, eqs, facets, dim, k),
        stripped=tuple(stripped),
    )


def from_hrep(dim: int, vertices, equations, inequalities) -> LatticePolytope:
    """Build from known vertices plus a valid H-description (redundancy allowed)."""
    return _assemble(dim, vertices, equations, inequalities)


# -- validation ---------------------------------------------------------------


def validate_pair(Q: LatticePolytope, lam: LinearForm) -> list[str]:
    """Positivity and Genericity violations; an empty list means the pair is valid."""
    if len(lam) != Q.dim:
        return [f"linear form has length {len(lam)}, expected {Q.dim}"]
    out = []
    for v in Q.vertices:
        if lam(v) < 0:
            out.append(f"Positivity violated at vertex {fmt_point(v)}")
    for i, j in Q.edges:
        u, v = Q.vertices[i], Q.vertices[j]
        if lam(u) == lam(v):
            out.append(f"Genericity violated on edge {fmt_point(u)}-{fmt_point(v)}")
    return out


def check_pair(Q: LatticePolytope, lam: LinearForm) -> None:
    violations = validate_pair(Q, lam)
    if violations:
        raise ValidationError(violations)


# -- lattice points -----------------------------------------------------------


def _constraints(Q: LatticePolytope, n: int, interior: bool):
    cons = []
    slack = 1 if interior else 0
    for f in Q.facets:
        cons.append((f.normal, n * f.offset - slack))
    for e in Q.equations:
        cons.append((e.normal, n * e.offset))
        cons.append((tuple(-a for a in e.normal), -n * e.offset))
    return cons


def _intervals(Q: LatticePolytope, n: int, interior: bool) -> Iterator[tuple[list[int], int, int]]:
    """Yield ``(prefix, lo, hi)``: the points ``prefix + [v]`` for lo <= v <= hi.

    Depth-first over coordinates; each coordinate range is cut down by every
    constraint using the box bounds of the coordinates not yet fixed.
    """
    d = Q.dim
    cons = _constraints(Q, n, interior)
    if d == 0:
        if all(rhs >= 0 for _, rhs in cons):
            yield [], 0, -1
        return
    lo = [n * min(v[i] for v in Q.vertices) for i in range(d)]
    hi = [n * max(v[i] for v in Q.vertices) for i in range(d)]
    # rest_min[c][k]: least possible value of sum_{i >= k} a_i x_i over the box
    rest_min = []
    for a, _ in cons:
        acc = [0] * (d + 1)
        for i in range(d - 1, -1, -1):
            acc[i] = acc[i + 1] + min(a[i] * lo[i], a[i] * hi[i])
        rest_min.append(acc)
    partial = [0] * len(cons)
    prefix: list[int] = []

    def rec(k: int):
        lower, upper = lo[k], hi[k]
        for ci, (a, rhs) in enumerate(cons):
            ak = a[k]
            room = rhs - partial[ci] - rest_min[ci][k + 1]
            if ak > 0:
                upper = min(upper, room // ak)
            elif ak < 0:
                lower = max(lower, -(room // -ak))
            elif room < 0:
                return
            if lower > upper:
                return
        if k == d - 1:
            yield prefix, lower, upper
            return
        for v in range(lower, upper + 1):
            prefix.append(v)
            for ci, (a, _) in enumerate(cons):
                partial[ci] += a[k] * v
            yield from rec(k + 1)
            for ci, (a, _) in enumerate(cons):
                partial[ci] -= a[k] * v
            prefix.pop()

    yield from rec(0)


def lattice_points(Q: LatticePolytope, n: int = 1, region: str = "closed") -> list[Vector]:
    """Integer points of ``nQ`` (``region="closed"``) or of its relative interior."""
    if n < 0:
        raise ValueError("dilation factor must be >= 0")
    if region not in ("closed", "interior"):
        raise ValueError(f"unknown region {region!r}")
    out = []
    for prefix, lo, hi in _intervals(Q, n, region == "interior"):
        if Q.dim == 0:
            out.append(())
            continue
        for v in range(lo, hi + 1):
            out.append(tuple(prefix) + (v,))
    return out


def weight_histogram(Q: LatticePolytope, lam: LinearForm, n: int, interior: bool = False) -> Counter:
    """Counter ``{lambda(x): multiplicity}`` over the lattice points of nQ.

    Dynamic programming over coordinates: once a prefix is fixed, the suffix
    count only depends on the partial sums of constraints that still involve
    later coordinates, so equal states are solved once.
    """
    d = Q.dim
    cons = _constraints(Q, n, interior)
    if d == 0:
        return Counter({0: 1}) if all(rhs >= 0 for _, rhs in cons) else Counter()
    c = lam.coefficients
    lo = [n * min(v[i] for v in Q.vertices) for i in range(d)]
    hi = [n * max(v[i] for v in Q.vertices) for i in range(d)]
    rest_min = []
    for a, _ in cons:
        acc = [0] * (d + 1)
        for i in range(d - 1, -1, -1):
            acc[i] = acc[i + 1] + min(a[i] * lo[i], a[i] * hi[i])
        rest_min.append(acc)
    last_use = [max((i for i in range(d) if a[i]), default=-1) for a, _ in cons]
    # constraints whose partial sum still matters when entering level k
    live = [[ci for ci in range(len(cons)) if last_use[ci] >= k and any(cons[ci][0][:k])] for k in range(d + 1)]
    touch = [[(ci, cons[ci][0][k]) for ci in range(len(cons)) if cons[ci][0][k]] for k in range(d)]
    if any(last_use[ci] < 0 and cons[ci][1] < 0 for ci in range(len(cons))):
        return Counter()
    memo: dict = {}
    partial = [0] * len(cons)

    def solve(k: int) -> dict[int, int]:
        key = (k,) + tuple(partial[ci] for ci in live[k])
        hit = memo.get(key)
        if hit is not None:
            return hit
        lower, upper = lo[k], hi[k]
        for ci, ak in touch[k]:
            room = cons[ci][1] - partial[ci] - rest_min[ci][k + 1]
            if ak > 0:
                upper = min(upper, room // ak)
            else:
                lower = max(lower, -(room // -ak))
        out: dict[int, int] = {}
        ck = c[k]
        if lower <= upper:
            if k == d - 1:
                if ck == 0:
                    out[0] = upper - lower + 1
                else:
                    for v in range(lower, upper + 1):
                        out[ck * v] = out.get(ck * v, 0) + 1
            else:
                for v in range(lower, upper + 1):
                    for ci, ak in touch[k]:
                        partial[ci] += ak * v
                    sub = solve(k + 1)
                    for ci, ak in touch[k]:
                        partial[ci] -= ak * v
                    shift = ck * v
                    for w, m in sub.items():
                        out[w + shift] = out.get(w + shift, 0) + m
        memo[key] = out
        return out

    return Counter({w: m for w, m in solve(0).items() if m})


def histogram_to_qrat(hist: Counter, inverse_q: bool = False) -> QRat:
    if not hist:
        return QRat()
    sign = -1 if inverse_q else 1
    exps = {sign * e: m for e, m in hist.items() if m}
    low = min(exps)
    coeffs = [0] * (max(exps) - low + 1)
    for e, m in exps.items():
        coeffs[e - low] += m
    return QRat(fmpz_poly(coeffs)) * QRat.q_power(low)


def weighted_sum(points: Iterable[Sequence[int]], lam: LinearForm, inverse_q: bool = False) -> QRat:
    """``sum q^lambda(x)`` over the points (``q^-lambda(x)`` when ``inverse_q``)."""
    return histogram_to_qrat(Counter(lam(p) for p in points), inverse_q)


def is_empty(Q: LatticePolytope) -> bool:
    """True when Q has no lattice point in its relative interior."""
    return next(_intervals(Q, 1, True), None) is None


# -- constructions ------------------------------------------------------------


def translate(Q: LatticePolytope, lam: LinearForm, v: Sequence[int]) -> LatticePolytope:
    """``Q + v``; requires ``lambda(v) >= 0`` so that Positivity survives."""
    v = tuple(v)
    if lam(v) < 0:
        raise PreconditionError(f"translation vector {fmt_point(v)} has negative weight {lam(v)}")
    verts = [tuple(a + b for a, b in zip(w, v)) for w in Q.vertices]
    eqs = [Facet(e.normal, e.offset + e.value(v)) for e in Q.equations]
    ineqs = [Facet(f.normal, f.offset + f.value(v)) for f in Q.facets]
    return from_hrep(Q.dim, verts, eqs, ineqs)


def max_vertex(Q: LatticePolytope, lam: LinearForm) -> Vector:
    values = [lam(v) for v in Q.vertices]
    top = max(values)
    if values.count(top) != 1:
        raise ValidationError(["linear form has no unique maximal vertex"])
    return Q.vertices[values.index(top)]


def reverse(Q: LatticePolytope, lam: LinearForm) -> LatticePolytope:
    """The reversal ``v_max - Q``."""
    violations = [v for v in validate_pair(Q, lam) if v.startswith("Genericity")]
    if violations:
        raise ValidationError(violations)
    vmax = max_vertex(Q, lam)
    verts = [tuple(a - b for a, b in zip(vmax, w)) for w in Q.vertices]
    eqs = [Facet(tuple(-a for a in e.normal), e.offset - e.value(vmax)) for e in Q.equations]
    ineqs = [Facet(tuple(-a for a in f.normal), f.offset - f.value(vmax)) for f in Q.facets]
    return from_hrep(Q.dim, verts, eqs, ineqs)


def pyramid(Q: LatticePolytope, lam: LinearForm, m: int) -> tuple[LatticePolytope, LinearForm]:
    """Pyramid with apex ``(1, 0)`` over ``(0, Q)`` and the form ``(k, v) -> k*m + lambda(v)``.

    ``m`` must lie outside the closed range of lambda over Q.
    """
    values = [lam(v) for v in Q.vertices]
    if m < 0 or min(values) <= m <= max(values):
        raise PreconditionError(f"pyramid weight {m} must be >= 0 and outside [{min(values)}, {max(values)}]")
    d = Q.dim
    verts = [(0,) + v for v in Q.vertices] + [(1,) + (0,) * d]
    # (k, v) with 0 <= k <= 1 and v in (1 - k) Q
    eqs = [Facet((e.offset,) + e.normal, e.offset) for e in Q.equations]
    ineqs = [Facet((f.offset,) + f.normal, f.offset) for f in Q.facets]
    ineqs += [Facet((-1,) + (0,) * d, 0), Facet((1,) + (0,) * d, 1)]
    return from_hrep(d + 1, verts, eqs, ineqs), LinearForm((m,) + lam.coefficients)


def bplus(Q: LatticePolytope, lam: LinearForm) -> tuple[LatticePolytope, LinearForm]:
    """Convex hull of the origin and ``{1} x Q``, with the form ``(k, v) -> k + lambda(v)``."""
    d = Q.dim
    verts = [(0,) * (d + 1)] + [(1,) + v for v in Q.vertices]
    # (k, v) with 0 <= k <= 1 and v in k Q
    eqs = [Facet((-e.offset,) + e.normal, 0) for e in Q.equations]
    ineqs = [Facet((-f.offset,) + f.normal, 0) for f in Q.facets]
    ineqs += [Facet((-1,) + (0,) * d, 0), Facet((1,) + (0,) * d, 1)]
    return from_hrep(d + 1, verts, eqs, ineqs), LinearForm((1,) + lam.coefficients)


# -- JSON documents -------------------------------------------------------------


def polytope_from_json(doc: dict) -> tuple[LatticePolytope, LinearForm]:
    """Parse ``{"dim": d, "vertices": [[...], ...], "lambda": [...]}``."""
    try:
        dim = doc["dim"]
        verts = doc["vertices"]
        lam = doc["lambda"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"polytope document is missing field {exc}") from None
    if not isinstance(dim, int) or dim < 0:
        raise ValueError("dim must be a nonnegative integer")
    for v in list(verts) + [lam]:
        if not isinstance(v, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
            raise ValueError("vertices and lambda must be lists of integers")
    if len(lam) != dim:
        raise ValueError(f"lambda has length {len(lam)}, expected {dim}")
    return make_polytope(dim, verts), LinearForm(lam)


def polytope_to_json(Q: LatticePolytope, lam: LinearForm) -> dict:
    return {"dim": Q.dim, "vertices": [list(v) for v in Q.vertices], "lambda": list(lam.coefficients)}
