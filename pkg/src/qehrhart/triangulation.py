"""The lambda-pulling triangulation and the simplicial-cone route to q-Ehrhart series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import QRat, SeriesTQ
from .errors import PreconditionError, ValidationError
from .linalg import Vector, _echelon, det
from .polytope import LatticePolytope, LinearForm, _subset_dim, check_pair, fmt_point

__all__ = [
    "Simplex",
    "Triangulation",
    "lambda_triangulation",
    "parallelepiped_points",
    "simplex_series",
    "series_via_triangulation",
    "polytope_faces",
]

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class Triangulation:
    maximal_simplices: tuple[Simplex, ...]
    all_faces: frozenset[Simplex]

    def points(self, Q: LatticePolytope, s: Simplex) -> list[Vector]:
        return [Q.vertices[i] for i in s]


def _facets_of_face(Q: LatticePolytope, face: frozenset[int], dim: int) -> set[frozenset[int]]:
    out = set()
    for f in Q.facets:
        sub = frozenset(i for i in face if f.value(Q.vertices[i]) == f.offset)
        if sub and sub != face and _subset_dim([Q.vertices[i] for i in sorted(sub)]) == dim - 1:
            out.add(sub)
    return out


def polytope_faces(Q: LatticePolytope) -> dict[frozenset[int], int]:
    """Every nonempty face of Q as a vertex-index set, mapped to its dimension."""
    top = frozenset(range(len(Q.vertices)))
    faces = {top: Q.affine_dim}
    stack = [top]
    while stack:
        face = stack.pop()
        for sub in _facets_of_face(Q, face, faces[face]):
            if sub not in faces:
                faces[sub] = faces[face] - 1
                stack.append(sub)
    return faces


def lambda_triangulation(Q: LatticePolytope, lam: LinearForm) -> Triangulation:
    """Pulling triangulation: cone the lambda-minimal vertex over the triangulated
    facets that avoid it, recursively in every face."""
    check_pair(Q, lam)
    memo: dict[frozenset[int], list[frozenset[int]]] = {}

    def tri(face: frozenset[int], dim: int) -> list[frozenset[int]]:
        if face in memo:
            return memo[face]
        if dim == 0:
            memo[face] = [face]
            return memo[face]
        values = {i: lam(Q.vertices[i]) for i in face}
        low = min(values.values())
        mins = [i for i, v in values.items() if v == low]
        if len(mins) != 1:
            pts = ", ".join(fmt_point(Q.vertices[i]) for i in mins)
            raise ValidationError([f"Genericity violated: face has several minimal vertices {pts}"])
        x0 = mins[0]
        out = []
        for sub in sorted(_facets_of_face(Q, face, dim), key=sorted):
            if x0 in sub:
                continue
            for s in tri(sub, dim - 1):
                out.append(s | {x0})
        memo[face] = out
        return out

    top = frozenset(range(len(Q.vertices)))
    maximal = tuple(sorted(tuple(sorted(s)) for s in tri(top, Q.affine_dim)))
    faces = set()
    for s in maximal:
        for r in range(1, len(s) + 1):
            faces.update(combinations(s, r))
    return Triangulation(maximal, frozenset(faces))


def parallelepiped_points(vertices: Sequence[Sequence[int]], mode: str = "lower") -> list[Vector]:
    """Integer points of the half-open parallelepiped spanned by ``w_i = (1, v_i)``.

    ``lower`` uses coefficients in [0, 1), ``upper`` in (0, 1].  In a coordinate
    chart where the generator matrix M is square, the coefficient vectors of
    lattice points are ``k / det M`` with k running over the finite group
    generated by the columns of adj(M) modulo det M.  The group is walked
    breadth-first; points whose lift leaves the lattice are dropped.
    """
    if mode not in ("lower", "upper"):
        raise ValueError(f"unknown mode {mode!r}")
    gens = [(1,) + tuple(v) for v in vertices]
    r = len(gens)
    chart = _row_chart(gens)
    if len(chart) != r:
        raise ValueError("simplex vertices are affinely dependent")
    M = [[gens[j][i] for j in range(r)] for i in chart]
    D = abs(det(M))
    inv = _inverse(M)
    steps = [tuple(int(inv[i][c] * D) % D for i in range(r)) for c in range(r)]
    group = {(0,) * r}
    frontier = list(group)
    while frontier:
        nxt = []
        for k in frontier:
            for s in steps:
                k2 = tuple((a + b) % D for a, b in zip(k, s))
                if k2 not in group:
                    group.add(k2)
                    nxt.append(k2)
        frontier = nxt
    out = []
    for k in group:
        if mode == "upper":
            k = tuple(a or D for a in k)
        point = []
        for c in range(len(gens[0])):
            s = sum(a * g[c] for a, g in zip(k, gens))
            if s % D:
                break
            point.append(s // D)
        else:
            out.append(tuple(point))
    return sorted(out)


def _row_chart(gens: Sequence[Vector]) -> list[int]:
    """Coordinates on which the generators stay linearly independent."""
    _, pivots = _echelon([list(g) for g in gens])
    return pivots


def _inverse(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    red, _ = _echelon([list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)])
    return [row[n:] for row in red]


def simplex_series(vertices: Sequence[Sequence[int]], lam: LinearForm, region: str = "closed") -> SeriesTQ:
    """Series of a lattice simplex (``closed``) or of the open cone over it
    (``relative_interior``: dilates n >= 1 only)."""
    values = [lam(v) for v in vertices]
    if len(set(values)) != len(values):
        raise PreconditionError("linear form does not separate the simplex vertices")
    mode = {"closed": "lower", "relative_interior": "upper"}.get(region)
    if mode is None:
        raise ValueError(f"unknown region {region!r}")
    degree: dict[int, dict[int, int]] = {}
    for p in parallelepiped_points(vertices, mode):
        e = lam(p[1:])
        row = degree.setdefault(p[0], {})
        row[e] = row.get(e, 0) + 1
    num = [QRat()] * (max(degree) + 1)
    for k, row in degree.items():
        low = min(row)
        coeffs = [0] * (max(row) - low + 1)
        for e, m in row.items():
            coeffs[e - low] = m
        num[k] = QRat(coeffs) * QRat.q_power(low)
    return SeriesTQ(num, values)


def series_via_triangulation(Q: LatticePolytope, lam: LinearForm) -> SeriesTQ:
    """q-Ehrhart series as 1 plus the open-cone series of every face of the pulling
    triangulation (the relative interiors partition each positive dilate)."""
    tri = lambda_triangulation(Q, lam)
    terms = [SeriesTQ([1])]
    for face in sorted(tri.all_faces):
        terms.append(simplex_series(tri.points(Q, face), lam, "relative_interior"))
    return SeriesTQ.sum(terms)
