import pytest
from hypothesis import given, settings, strategies as st

from lecture_hall.inversions import (
    InversionSequence,
    SSequence,
    complement_involution,
    enumerate_all,
    enumerate_restricted,
    interlacing_certificate,
    s_derangement_enum,
    s_derangement_recursive,
    s_eulerian,
)
from lecture_hall.polynomial import IntPolynomial, is_symmetric
from lecture_hall.roots import is_interlacing_sequence, is_real_rooted

s_vectors = st.lists(st.integers(1, 6), min_size=1, max_size=5).map(tuple)


def P(*c):
    return IntPolynomial(c)


def brute_eulerian(s, stat="asc"):
    counts = {}
    for e in enumerate_all(s):
        k = e.asc if stat == "asc" else e.des
        counts[k] = counts.get(k, 0) + 1
    return IntPolynomial([counts.get(k, 0) for k in range(max(counts) + 1)])


def brute_restricted(s, stat="asc"):
    # straight filter over all of I_n^s, independent of the pruned search
    counts = [0] * (len(s) + 2)
    for e in enumerate_all(s):
        if e.is_restricted():
            counts[e.asc if stat == "asc" else e.des] += 1
    return IntPolynomial(counts)


def test_sequence_parsing_and_validation():
    assert SSequence.parse("2,3,4").entries == (2, 3, 4)
    assert str(SSequence((2, 3))) == "2,3"
    with pytest.raises(ValueError):
        SSequence.parse("2,a")
    with pytest.raises(ValueError):
        SSequence(())
    with pytest.raises(ValueError):
        SSequence((2, 0))
    with pytest.raises(ValueError):
        InversionSequence((2,), (2,))


def test_ascent_and_descent_sets():
    e = InversionSequence((1, 0, 3, 2), (2, 3, 4, 5))
    assert e.padded == (0, 1, 0, 3, 2, 0)
    assert e.ascent_set() == {0, 2}
    assert e.descent_set() == {1, 3, 4}
    assert e.is_restricted()


def test_eulerian_examples():
    assert s_eulerian((2, 3)) == P(1, 4, 1)
    assert s_eulerian((2, 3, 4)) == P(1, 11, 11, 1)
    assert s_eulerian((1, 1, 1)) == P(1)


def test_derangement_examples():
    assert s_derangement_enum((2, 3)) == P(0, 1, 1)
    assert s_derangement_enum((3, 3)) == P(0, 1, 1)
    assert s_derangement_enum((2, 3, 4)) == P(0, 1, 7, 1)
    assert s_derangement_enum((2, 3, 4, 5)) == P(0, 1, 21, 21, 1)
    assert s_derangement_enum((3,)) == P(0, 2)
    assert s_derangement_enum((2, 2)).is_zero
    assert s_derangement_enum((1, 2, 3)).is_zero


def test_restricted_allows_interior_zeros():
    seqs = {e.entries for e in enumerate_restricted((2, 3, 4, 5))}
    assert (1, 0, 3, 2) in seqs
    assert all(e[0] and e[-1] for e in seqs)


def test_certificate_small_case():
    assert interlacing_certificate((3,)) == [P(), P(0, 1), P(0, 1)]


def test_unknown_statistic():
    with pytest.raises(ValueError):
        s_eulerian((2,), "foo")


@given(s_vectors)
@settings(max_examples=60)
def test_eulerian_matches_brute_force(s):
    assert s_eulerian(s) == brute_eulerian(s)
    assert s_eulerian(s, "des") == brute_eulerian(s, "des")


@given(s_vectors)
@settings(max_examples=60)
def test_ascents_and_descents_equidistributed(s):
    assert s_eulerian(s, "asc") == s_eulerian(s, "des")


@given(s_vectors, st.data())
def test_complement_swaps_ascents_and_descents(s, data):
    e = InversionSequence(tuple(data.draw(st.integers(0, x - 1)) for x in s), s)
    f = complement_involution(e)
    assert complement_involution(f) == e
    assert f.asc == e.des and f.des == e.asc


@given(s_vectors)
@settings(max_examples=60)
def test_restricted_search_matches_filter(s):
    assert s_derangement_enum(s) == brute_restricted(s)
    assert s_derangement_enum(s, "des") == brute_restricted(s, "des")


@given(s_vectors)
@settings(max_examples=80)
def test_recursion_matches_enumeration(s):
    assert s_derangement_recursive(s) == s_derangement_enum(s)


@given(s_vectors)
@settings(max_examples=80)
def test_derangement_poly_symmetric_and_real_rooted(s):
    d = s_derangement_enum(s)
    assert is_symmetric(d, len(s) + 1)
    assert is_real_rooted(d)


@given(s_vectors)
@settings(max_examples=40)
def test_certificate_family_interlaces(s):
    assert is_interlacing_sequence(interlacing_certificate(s))
