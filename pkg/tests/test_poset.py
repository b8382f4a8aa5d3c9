from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qehrhart.algebra import QRat, SeriesTQ, XPoly, q, qfactorial, qint
from qehrhart.corpus import claw, poset_corpus, tree_corpus
from qehrhart.ehrhart import qehrhart_polynomial, qehrhart_series, series_limit_t1, value_at_infinity, w_poly
from qehrhart.polytope import is_empty, validate_pair
from qehrhart.poset import (
    antichain,
    chain,
    chain_product,
    colouring_sum,
    derive_poset,
    descent_numerator,
    linear_extensions,
    longest_chain,
    macmahon_polynomial,
    make_poset,
    natural_labelling,
    order_polytope,
    poset_from_json,
    poset_to_json,
    q_volume,
    rooted_trees,
)

SMALL = {k: P for k, P in poset_corpus((3, 2)).items() if P.size <= 6}


@st.composite
def random_posets(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return make_poset(n, chosen)


def test_make_poset():
    one = make_poset(1, [])
    assert one.size == 1 and one.leq == ((True,),)
    C = claw()
    assert C.covers() == [(0, 1), (0, 2), (0, 3)]
    assert C.minimal() == [0] and C.maximal() == [1, 2, 3]
    with pytest.raises(ValueError, match="cycle"):
        make_poset(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        make_poset(2, [(0, 2)])


def test_transitive_closure():
    P = make_poset(3, [(0, 1), (1, 2)])
    assert P.less(0, 2) and P.covers() == [(0, 1), (1, 2)]


def test_order_polytope_examples():
    Q, lam = order_polytope(chain(1))
    assert qehrhart_polynomial(Q, lam) == XPoly([1, q])
    Q2, lam2 = order_polytope(chain(2))
    assert qehrhart_polynomial(Q2, lam2) == XPoly([1, q]) * XPoly([q + 1, q * q]) / (q + 1)
    Q3, lam3 = order_polytope(antichain(2))
    assert qehrhart_polynomial(Q3, lam3) == XPoly([1, q]) ** 2
    for n in range(3):
        assert w_poly(Q3, lam3, n) == qint(n + 1) ** 2


@pytest.mark.parametrize("name", sorted(poset_corpus()))
def test_order_polytope_properties(name):
    P = poset_corpus()[name]
    Q, lam = order_polytope(P)
    assert validate_pair(Q, lam) == []
    values = [lam(v) for v in Q.vertices]
    assert min(values) == 0 and max(values) == P.size
    assert is_empty(Q)
    assert Q.affine_dim == P.size
    # the facet list is exactly one inequality per cover plus the bounding ones
    assert len(Q.facets) == len(P.covers()) + len(P.minimal()) + len(P.maximal())


def test_order_polytope_matches_hull_construction():
    from qehrhart.polytope import make_polytope

    for P in [claw(), chain(3), antichain(3)]:
        Q, _ = order_polytope(P)
        H = make_polytope(P.size, Q.vertices)
        assert set(H.facets) == set(Q.facets) and set(H.edges) == set(Q.edges)


def test_linear_extensions_and_labelling():
    assert list(linear_extensions(antichain(2))) == [(0, 1), (1, 0)]
    assert len(list(linear_extensions(claw()))) == 6
    # first extension is (1, 2, 0): element 1 is placed before 2 by index
    assert natural_labelling(make_poset(3, [(2, 0)])) == [3, 1, 2]


def test_colouring_examples():
    assert colouring_sum(chain(1), 1) == 1 + q
    assert colouring_sum(chain(2), 2, strict=True) == 0
    for P in SMALL.values():
        assert colouring_sum(P, 0) == 1
    with pytest.raises(ValueError):
        colouring_sum(chain(1), -1)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_colourings_are_weighted_points(name):
    P = SMALL[name]
    Q, lam = order_polytope(P)
    for n in range(P.size + 3):
        assert colouring_sum(P, n) == w_poly(Q, lam, n)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_strict_colouring_reciprocity(name):
    P = SMALL[name]
    L = qehrhart_polynomial(*order_polytope(P))
    for n in range(1, 6):
        assert colouring_sum(P, n, strict=True).invert_q() == (-1) ** P.size * L(qint(-n))


def test_one_element_strict_colouring_weight_direction():
    # strictly increasing colourings of a point by {1..n-1} weigh q + ... + q^(n-1);
    # reciprocity produces the same sum in 1/q
    L = XPoly([1, q])
    assert colouring_sum(chain(1), 3, strict=True) == q + q * q
    assert -L(qint(-3)) == QRat.q_power(-1) + QRat.q_power(-2)


def test_descent_numerator_examples():
    assert descent_numerator(chain(1)) == SeriesTQ([1], [0, 1])
    assert descent_numerator(antichain(2)).numerator_over(range(3)) == [QRat(1), q]
    assert descent_numerator(chain(2)) == SeriesTQ([1], [0, 1, 2])
    claw_num = descent_numerator(claw()).numerator_over(range(5))
    assert claw_num == [QRat(1), 2 * (q + q * q), q ** 3]


@given(random_posets())
@settings(max_examples=25, deadline=None)
def test_descent_numerator_equals_geometric_series(P):
    D = descent_numerator(P)
    assert D == qehrhart_series(*order_polytope(P))
    num = D.numerator_over(range(P.size + 1))
    assert num[0] == 1
    assert all(c.is_integral_polynomial() and min(c.numerator_coeffs(), default=0) >= 0 for c in num)
    total = sum((c.at_one() for c in num), 0)
    assert total == len(list(linear_extensions(P)))


def test_derive_poset_examples():
    two = derive_poset(chain(1), "add_min")
    assert qehrhart_series(*order_polytope(two)) == SeriesTQ([1], [0, 1, 2])
    co = derive_poset(claw(), "opposite")
    assert co.covers() == [(1, 0), (2, 0), (3, 0)]
    assert descent_numerator(derive_poset(chain(3), "opposite")) == descent_numerator(chain(3))
    with pytest.raises(ValueError):
        derive_poset(chain(1), "sideways")


@given(random_posets(max_size=4))
@settings(max_examples=20, deadline=None)
def test_derived_series_identities(P):
    S = descent_numerator(P)
    p = P.size
    assert descent_numerator(derive_poset(P, "add_min")) == S.divide_by_factor(p + 1)
    assert descent_numerator(derive_poset(P, "add_max")) == S.substitute(1).divide_by_factor(0)
    assert descent_numerator(derive_poset(P, "opposite")) == S.substitute(p, invert_q=True)


def test_q_volume_examples():
    assert q_volume(claw()) == q ** 5 * (q + 1) * QRat([1, -1, 3, -1, 1])
    assert q_volume(derive_poset(claw(), "opposite")) == q ** 7 * (q + 1) * QRat([1, 1, 1])
    assert q_volume(chain(1)) == q


@pytest.mark.parametrize("name", sorted(SMALL))
def test_q_volume_via_opposite_numerator(name):
    P = SMALL[name]
    p = P.size
    num = descent_numerator(derive_poset(P, "opposite")).numerator_over(range(p + 1))
    total = sum((c.invert_q() for c in num), QRat())
    assert q_volume(P) == QRat.q_power(comb(p + 1, 2)) * total


def test_q_volume_at_one_counts_extensions():
    for P in SMALL.values():
        assert q_volume(P).at_one() == len(list(linear_extensions(P)))


def test_macmahon_examples():
    assert macmahon_polynomial(1, 1) == XPoly([1, q])
    assert macmahon_polynomial(2, 1) == XPoly([1, q]) * XPoly([q + 1, q * q]) / (q + 1)
    for m, n in [(2, 2), (3, 2)]:
        assert macmahon_polynomial(m, n) == qehrhart_polynomial(*order_polytope(chain_product(m, n)))
    assert macmahon_polynomial(2, 3) == macmahon_polynomial(3, 2)


def test_longest_chain():
    assert longest_chain(antichain(3)) == 1
    assert longest_chain(chain(3)) == 3
    assert longest_chain(claw()) == 2


@pytest.mark.parametrize("name", sorted(SMALL))
def test_chain_divisibility(name):
    P = SMALL[name]
    L = qehrhart_polynomial(*order_polytope(P))
    for n in range(1, longest_chain(P) + 1):
        assert L.divmod(XPoly([qint(n), QRat.q_power(n)]))[1].is_zero()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_value_at_infinity_equals_series_limit(name):
    Q, lam = order_polytope(SMALL[name])
    L = qehrhart_polynomial(Q, lam)
    assert value_at_infinity(L) == series_limit_t1(qehrhart_series(Q, lam, L))


def test_value_at_infinity_single_point():
    assert value_at_infinity(XPoly([1, q])) == 1 / (1 - q)


def test_rooted_trees():
    trees = rooted_trees(5)
    sizes = [T.size for T in trees]
    assert [sizes.count(k) for k in range(1, 6)] == [1, 1, 2, 4, 9]
    for T in trees:
        assert len(T.maximal()) == 1 and len(T.covers()) == T.size - 1
    assert len(tree_corpus()) == 17


def test_json_roundtrip():
    doc = poset_to_json(claw())
    assert doc == {"size": 4, "covers": [[0, 1], [0, 2], [0, 3]]}
    assert poset_from_json(doc) == claw()
    for bad in [{}, {"size": -1}, {"size": 2, "covers": [[0]]}, {"size": 2, "covers": [[0, 1], [1, 0]]}]:
        with pytest.raises(ValueError):
            poset_from_json(bad)
