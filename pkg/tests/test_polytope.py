from collections import Counter
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qehrhart.algebra import QRat, q
from qehrhart.corpus import example, polytope_corpus
from qehrhart.errors import PreconditionError, ValidationError
from qehrhart.linalg import solve
from qehrhart.polytope import (
    LinearForm,
    _subset_dim,
    bplus,
    check_pair,
    is_empty,
    lattice_points,
    make_polytope,
    polytope_from_json,
    polytope_to_json,
    pyramid,
    reverse,
    translate,
    validate_pair,
    weight_histogram,
    weighted_sum,
)

points_2d = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=6)
points_3d = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=6)


def in_hull(x, verts) -> bool:
    """Exact convex-combination membership: solve for nonnegative weights summing to 1.

    Brute force over supports of size <= dim+1 (Caratheodory)."""
    dim = len(x)
    for k in range(1, min(len(verts), dim + 1) + 1):
        for sub in combinations(verts, k):
            rows = [[v[i] for v in sub] for i in range(dim)] + [[1] * k]
            sol = solve(rows, list(x) + [1])
            if sol is not None and all(c >= 0 for c in sol):
                # free variables were set to 0; verify the combination really hits x
                if all(sum(c * v[i] for c, v in zip(sol, sub)) == x[i] for i in range(dim)):
                    return True
    return False


# -- construction ------------------------------------------------------------------------


def test_make_polytope_examples():
    Q = make_polytope(1, [(0,), (1,)])
    assert len(Q.vertices) == 2 and Q.affine_dim == 1
    C = make_polytope(2, [(0, 0), (1, 0), (1, 1), (2, 1)])
    assert len(C.edges) == 4 and C.affine_dim == 2
    S = make_polytope(2, [(0, 0), (1, 0), (2, 0)])
    assert sorted(S.vertices) == [(0, 0), (2, 0)] and S.stripped == ((1, 0),)
    assert S.affine_dim == 1


def test_make_polytope_errors():
    with pytest.raises(ValueError):
        make_polytope(2, [])
    with pytest.raises(ValueError):
        make_polytope(2, [(0, 0), (1,)])
    with pytest.raises(ValueError):
        make_polytope(1, [(0,), (1,), (2,)], strip=False)


@given(st.one_of(points_2d, points_3d))
@settings(max_examples=40, deadline=None)
def test_facet_description_is_exact(pts):
    dim = len(pts[0])
    Q = make_polytope(dim, pts)
    k = Q.affine_dim
    for f in Q.facets:
        tight = [v for v in Q.vertices if f.value(v) == f.offset]
        assert all(f.value(v) <= f.offset for v in Q.vertices)
        assert _subset_dim(tight) == k - 1
    # every vertex is the unique maximizer of the sum of its tight facet normals
    for v in Q.vertices:
        normal = [0] * dim
        for f in Q.facets:
            if f.value(v) == f.offset:
                normal = [a + b for a, b in zip(normal, f.normal)]
        vals = [sum(a * b for a, b in zip(normal, w)) for w in Q.vertices]
        if k > 0:
            assert vals.count(max(vals)) == 1 and vals[Q.vertices.index(v)] == max(vals)
    # every input point lies in the hull; non-vertices are not extreme
    for p in pts:
        assert Q.contains(p)


@given(st.one_of(points_2d, points_3d), st.integers(0, 2))
@settings(max_examples=25, deadline=None)
def test_lattice_points_match_convex_combination_oracle(pts, n):
    dim = len(pts[0])
    Q = make_polytope(dim, pts)
    scaled = [tuple(n * c for c in v) for v in Q.vertices]
    box = [range(min(v[i] for v in scaled), max(v[i] for v in scaled) + 1) for i in range(dim)]
    oracle = sorted(x for x in product(*box) if in_hull(x, scaled))
    assert sorted(lattice_points(Q, n)) == oracle
    # dilation consistency: the polytope with vertices n*v has the same points
    assert sorted(lattice_points(make_polytope(dim, scaled))) == oracle


def test_validate_pair_messages():
    assert validate_pair(*example("exa")) == []
    square = make_polytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    msgs = validate_pair(square, LinearForm([1, 0]))
    assert "Genericity violated on edge (1,0)-(1,1)" in msgs
    seg = make_polytope(1, [(-1,), (1,)])
    assert validate_pair(seg, LinearForm([1])) == ["Positivity violated at vertex (-1)"]
    with pytest.raises(ValidationError) as info:
        check_pair(seg, LinearForm([1]))
    assert info.value.violations == ["Positivity violated at vertex (-1)"]


def test_lattice_points_examples():
    Q, lam = example("exa")
    assert lattice_points(Q, 2) == [(0,), (1,), (2,)]
    assert lattice_points(Q, 2, "interior") == [(1,)]
    for name, (P, _) in polytope_corpus().items():
        assert lattice_points(P, 0) == [(0,) * P.dim], name


def test_weighted_sum_examples():
    Q, lam = example("exa")
    assert weighted_sum(lattice_points(Q, 1), lam) == 1 + q
    B, lam_b = example("exb")
    assert weighted_sum(lattice_points(B, 2), lam_b) == QRat([1, 1, 2, 1, 1])
    assert weighted_sum([], lam) == 0
    assert weighted_sum(lattice_points(Q, 1), lam, inverse_q=True) == 1 + 1 / q


@given(st.one_of(points_2d, points_3d), st.integers(0, 3), st.booleans(), st.data())
@settings(max_examples=40, deadline=None)
def test_histogram_matches_point_listing(pts, n, interior, data):
    dim = len(pts[0])
    Q = make_polytope(dim, pts)
    lam = LinearForm(data.draw(st.lists(st.integers(-2, 3), min_size=dim, max_size=dim)))
    region = "interior" if interior else "closed"
    listed = Counter(lam(p) for p in lattice_points(Q, n, region))
    assert weight_histogram(Q, lam, n, interior) == listed


def test_relative_interior_of_embedded_segment():
    seg = make_polytope(2, [(0, 0), (2, 2)])
    assert lattice_points(seg, 1, "interior") == [(1, 1)]
    assert not is_empty(seg)


def test_is_empty_examples():
    for name in ("exa", "exb", "exc", "exd"):
        assert is_empty(example(name)[0])
    assert not is_empty(make_polytope(2, [(0, 0), (3, 0), (0, 3)]))


# -- constructions ------------------------------------------------------------------------


def test_translate():
    Q, lam = example("exa")
    T = translate(Q, lam, (1,))
    assert sorted(T.vertices) == [(1,), (2,)]
    assert translate(Q, lam, (0,)) == Q
    B, lam_b = example("exb")
    TB = translate(B, lam_b, (1, 0))
    assert weighted_sum(lattice_points(TB, 1), lam_b) == q * (1 + q + q * q)
    with pytest.raises(PreconditionError):
        translate(Q, lam, (-1,))


def test_reverse_examples():
    Q, lam = example("exa")
    assert sorted(reverse(Q, lam).vertices) == [(0,), (1,)]
    B, lam_b = example("exb")
    assert sorted(reverse(B, lam_b).vertices) == sorted([(1, 1), (0, 1), (0, 0)])
    D, lam_d = example("exd")
    assert sorted(reverse(D, lam_d).vertices) == sorted([(0, 3), (-1, 3), (-1, 2), (0, 0)])
    square = make_polytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    with pytest.raises(ValidationError):
        reverse(square, LinearForm([1, 0]))


@pytest.mark.parametrize("name", sorted(polytope_corpus()))
def test_reverse_is_an_involution_up_to_translation(name):
    Q, lam = polytope_corpus()[name]
    R = reverse(Q, lam)
    assert validate_pair(R, lam) == []
    RR = reverse(R, lam)
    shift = [a - b for a, b in zip(min(RR.vertices), min(Q.vertices))]
    assert sorted(tuple(a - s for a, s in zip(v, shift)) for v in RR.vertices) == sorted(Q.vertices)


def test_pyramid():
    Q, lam = example("exa")
    P, form = pyramid(Q, lam, 2)
    assert sorted(P.vertices) == [(0, 0), (0, 1), (1, 0)]
    assert form.coefficients == (2, 1)
    assert validate_pair(P, form) == []
    with pytest.raises(PreconditionError):
        pyramid(Q, lam, 1)
    shifted = translate(make_polytope(1, [(0,), (1,)]), lam, (3,))
    assert pyramid(shifted, lam, 1)[1].coefficients == (1, 1)


def test_bplus():
    Q, lam = example("exa")
    B, form = bplus(Q, lam)
    assert sorted(B.vertices) == [(0, 0), (1, 0), (1, 1)] and form.coefficients == (1, 1)
    assert is_empty(B)
    point = make_polytope(0, [()])
    S, f0 = bplus(point, LinearForm([]))
    assert sorted(S.vertices) == [(0,), (1,)] and f0.coefficients == (1,)


# -- JSON -----------------------------------------------------------------------------------


def test_json_roundtrip_and_errors():
    Q, lam = example("exd")
    doc = polytope_to_json(Q, lam)
    Q2, lam2 = polytope_from_json(doc)
    assert Q2 == Q and lam2 == lam
    for bad in [{}, {"dim": 1, "vertices": [[0]]}, {"dim": 1, "vertices": [[0.5]], "lambda": [1]},
                {"dim": 2, "vertices": [[0, 0]], "lambda": [1]}, {"dim": -1, "vertices": [], "lambda": []}]:
        with pytest.raises(ValueError):
            polytope_from_json(bad)
