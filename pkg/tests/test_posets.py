import json
from itertools import product
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from lecture_hall.errors import FaceNotInComplex, NotPure, NotRanked, TooLarge
from lecture_hall.polynomial import IntPolynomial, is_symmetric, is_unimodal
from lecture_hall.posets import (
    OrderPolytope,
    Poset,
    SimplicialComplex,
    betke_mcmullen_hstar,
    box_unimodality_report,
    canonical_triangulation,
    complex_h_polynomial,
    count_dilate_points,
    ehrhart_hstar,
    is_reflexive,
    linear_extensions,
    link,
    nonisomorphic_posets,
    order_filters,
    rank_sequence,
)


def P(*c):
    return IntPolynomial(c)


VEE = Poset(3, ((1, 3), (2, 3)))
SQUARE = OrderPolytope(Poset(2), (1, 1))


def test_poset_normalizes_to_covers():
    Q = Poset(3, ((1, 2), (2, 3), (1, 3)))
    assert Q.covers == ((1, 2), (2, 3))
    assert Q.leq(1, 3) and not Q.leq(3, 1)
    assert Q == Poset.chain(3)


def test_poset_rejects_unnatural_labels():
    with pytest.raises(ValueError):
        Poset(2, ((2, 1),))


def test_poset_json_roundtrip():
    data = json.dumps(VEE.to_json())
    assert Poset.from_json(data) == VEE


def test_linear_extensions():
    assert len(list(linear_extensions(Poset.antichain(3)))) == 6
    assert len(list(linear_extensions(Poset.chain(3)))) == 1
    assert {str(p) for p in linear_extensions(VEE)} == {"123", "213"}


def test_filters():
    assert order_filters(Poset.chain(2)) == [0b00, 0b10, 0b11]
    assert len(order_filters(Poset.antichain(3))) == 8


def test_dilate_counts():
    assert count_dilate_points(SQUARE, 2) == 9
    assert count_dilate_points(OrderPolytope(Poset.chain(2), (1, 1)), 1) == 3
    assert count_dilate_points(SQUARE, 0) == 1
    O = OrderPolytope(VEE, (1, 1, 2))
    # x3 = 2 leaves x1, x2 free; x3 <= 1 forces x1 = x2 = 0
    assert count_dilate_points(O, 1) == count_dilate_points(O, 1, method="box") == 6


def test_ehrhart_examples():
    assert ehrhart_hstar(SQUARE) == P(1, 1)
    assert ehrhart_hstar(OrderPolytope(Poset.chain(2), (1, 1))) == P(1)
    assert ehrhart_hstar(OrderPolytope(VEE, (1, 1, 2))) == P(1, 2, 1)
    assert ehrhart_hstar(OrderPolytope(Poset.chain(2), (2, 2))) == P(1, 3)


def test_dilate_guard():
    O = OrderPolytope(Poset.antichain(5), (50, 50, 50, 50, 50))
    with pytest.raises(TooLarge):
        ehrhart_hstar(O)


def test_triangulation_shape():
    T = canonical_triangulation(OrderPolytope(Poset.chain(2), (1, 1)))
    assert len(T.facets) == 1
    T = canonical_triangulation(SQUARE)
    assert len(T.facets) == 2
    assert all(len(f) == 3 for f in T.facets)
    # the two triangles share the diagonal from 00 to 11
    assert T.facets[0] & T.facets[1] == frozenset({0b00, 0b11})


def test_h_polynomials():
    simplex = SimplicialComplex.from_facets([{1, 2, 3}])
    assert complex_h_polynomial(simplex) == P(1)
    boundary = SimplicialComplex.from_facets([{1, 2}, {2, 3}, {1, 3}])
    assert complex_h_polynomial(boundary) == P(1, 1, 1)
    assert complex_h_polynomial(SimplicialComplex(frozenset())) == P(1)
    with pytest.raises(NotPure):
        complex_h_polynomial(SimplicialComplex.from_facets([{1, 2}, {3}]))


def test_links():
    T = canonical_triangulation(SQUARE)
    facet = T.facets[0]
    assert link(T, facet).faces == {frozenset()}
    assert link(T, frozenset()).faces == T.faces
    corner = link(T, {0b01})
    assert corner.facets == [frozenset({0b00, 0b11})]
    diagonal_end = link(T, {0b00})
    assert sorted(map(sorted, diagonal_end.facets)) == [[1, 3], [2, 3]]
    assert complex_h_polynomial(link(T, frozenset())) == P(1, 1)
    with pytest.raises(FaceNotInComplex):
        link(T, {0b01, 0b10})


def test_rank_sequence():
    assert rank_sequence(Poset.antichain(3)).entries == (1, 1, 1)
    assert rank_sequence(Poset.chain(3)).entries == (1, 2, 3)
    assert rank_sequence(VEE).entries == (1, 1, 2)
    with pytest.raises(NotRanked):
        rank_sequence(Poset(4, ((1, 2), (2, 4), (3, 4))))


def test_reflexive():
    assert is_reflexive(P(1, 2, 1), 2)
    assert not is_reflexive(P(1, 3), 2)
    assert is_reflexive(P(1), 0)


def test_remark_values():
    assert betke_mcmullen_hstar(OrderPolytope(VEE, (1, 1, 2))) == P(1, 2, 1)
    for Q, mu in [
        (Poset(2), (1, 2)),
        (Poset(2), (2, 1)),
        (Poset.chain(2), (1, 4)),
        (Poset.chain(2), (4, 1)),
        (Poset.chain(2), (2, 2)),
    ]:
        assert ehrhart_hstar(OrderPolytope(Q, mu)) == P(1, 3)


def test_poset_counts():
    assert [len(nonisomorphic_posets(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_box_report_chain():
    for s in product(range(1, 4), repeat=3):
        report = box_unimodality_report(OrderPolytope(Poset.chain(3), s))
        assert report.passed
        assert len(report.rows) == 2**4 - 1


def test_box_report_unimodular():
    report = box_unimodality_report(SQUARE)
    assert all(row.local_hstar.is_zero for row in report.rows)


posets = st.integers(1, 4).flatmap(lambda n: st.sampled_from(nonisomorphic_posets(n)))


@given(posets, st.data())
@settings(max_examples=40, deadline=None)
def test_betke_mcmullen_matches_counting(Pz, data):
    s = tuple(data.draw(st.integers(1, 3)) for _ in range(Pz.n))
    O = OrderPolytope(Pz, s)
    h = ehrhart_hstar(O)
    assert betke_mcmullen_hstar(O) == h
    assert all(c >= 0 for c in h.coeffs)
    assert h(1) == len(list(linear_extensions(Pz))) * prod(s)


@given(posets, st.data())
@settings(max_examples=30, deadline=None)
def test_dfs_counter_matches_box(Pz, data):
    s = tuple(data.draw(st.integers(1, 3)) for _ in range(Pz.n))
    t = data.draw(st.integers(0, 2))
    O = OrderPolytope(Pz, s)
    assert count_dilate_points(O, t) == count_dilate_points(O, t, method="box")


@given(posets, st.data())
@settings(max_examples=30, deadline=None)
def test_triangulation_covers_with_disjoint_interiors(Pz, data):
    s = tuple(data.draw(st.integers(1, 3)) for _ in range(Pz.n))
    O = OrderPolytope(Pz, s)
    T = canonical_triangulation(O)
    assert len(T.facets) == len(list(linear_extensions(Pz)))
    assert all(O.contains(v) for v in T.points.values())
    # simplices inside O whose volumes add up to vol(O) tile it to the polytope's normalized volume
    total = sum(T.simplex(f).normalized_volume for f in T.facets)
    assert total == ehrhart_hstar(O)(1)


def test_ranked_posets_symmetric():
    for n in range(1, 5):
        for Q in nonisomorphic_posets(n):
            try:
                s = rank_sequence(Q)
            except NotRanked:
                continue
            h = ehrhart_hstar(OrderPolytope(Q, s))
            assert is_symmetric(h, n - 1)
            if len(Q.minimal_elements()) == 1:
                assert is_unimodal(h)
