from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from lecture_hall.errors import HasFixedPoint, NotRestricted, TooLarge
from lecture_hall.inversions import InversionSequence, enumerate_restricted, s_derangement_enum, s_eulerian
from lecture_hall.permutations import (
    ColoredPermutation,
    Permutation,
    SmirnoffWord,
    bad_numbers,
    colored_derangement_formula,
    colored_derangement_poly,
    colored_descent_count,
    colored_eulerian,
    colored_excedance_count,
    colored_permutations,
    derangement_poly,
    derangement_to_inversion,
    descent_count,
    eulerian_poly,
    excedance_count,
    insert_bad,
    inversion_to_derangement,
    is_colored_derangement,
    is_derangement,
    lehmer_code,
    psi_inverse,
    psi_map,
    remove_bad,
    smirnoff_descent_poly,
    smirnoff_words,
)
from lecture_hall.polynomial import IntPolynomial, symmetric_decomposition


def P(*c):
    return IntPolynomial(c)


def C(text, r=None):
    return ColoredPermutation.parse(text, r)


def bad_numbers_by_definition(sigma):
    # literal reading of the three conditions, no suffix minima
    v = [0, *sigma.values]
    c = [0, *sigma.colors]
    n = sigma.n
    out = set()
    for j in range(1, n + 1):
        right_min = all(v[j] < v[k] for k in range(j + 1, n + 1))
        prev_min = all(v[j - 1] < v[k] for k in range(j, n + 1))
        if right_min and prev_min and c[j] == c[j - 1]:
            out.add(v[j])
    return out


def test_classical_statistics():
    p = Permutation.parse("34521")
    assert excedance_count(p) == 3
    assert descent_count(p) == 2
    assert is_derangement(p)
    ident = Permutation((1, 2, 3))
    assert descent_count(ident) == excedance_count(ident) == 0
    assert not is_derangement(ident)
    assert excedance_count((2, 1)) == 1 and is_derangement((2, 1))


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_lehmer_code():
    assert lehmer_code((3, 1, 2)) == (2, 0, 0)
    assert lehmer_code((1, 2, 3)) == (0, 0, 0)


def test_classical_polynomials():
    assert eulerian_poly(3) == P(1, 4, 1)
    assert derangement_poly(2) == P(0, 1)
    assert derangement_poly(4) == P(0, 1, 7, 1)
    assert [derangement_poly(n)(1) for n in range(7)] == [1, 0, 1, 2, 9, 44, 265]
    with pytest.raises(TooLarge):
        derangement_poly(10)


def test_bijection_worked_example():
    e = InversionSequence((1, 0, 3, 2), (2, 3, 4, 5))
    p = inversion_to_derangement(e)
    assert str(p) == "34521"
    assert p.cycles() == [(1, 3, 5), (2, 4)]
    assert derangement_to_inversion(p).padded == (0, 1, 0, 3, 2, 0)


def test_bijection_n2():
    assert str(inversion_to_derangement(InversionSequence((1,), (2,)))) == "21"
    assert derangement_to_inversion((2, 1)).entries == (1,)


def test_bijection_errors():
    with pytest.raises(NotRestricted):
        inversion_to_derangement(InversionSequence((1, 0), (2, 3)))
    with pytest.raises(HasFixedPoint):
        derangement_to_inversion((1, 3, 2))


@pytest.mark.parametrize("n", range(2, 7))
def test_bijection_exhaustive(n):
    s = tuple(range(2, n + 1))
    seqs = list(enumerate_restricted(s))
    perms = [inversion_to_derangement(e) for e in seqs]
    assert len(set(perms)) == len(seqs)
    assert {p.values for p in perms} == {q for q in permutations(range(1, n + 1)) if is_derangement(q)}
    for e, p in zip(seqs, perms):
        assert excedance_count(p) == e.des
        assert derangement_to_inversion(p) == e


@pytest.mark.parametrize("n", range(2, 8))
def test_derangement_polynomial_from_sequences(n):
    assert s_derangement_enum(tuple(range(2, n + 1))) == derangement_poly(n)


def test_smirnoff_words():
    assert list(smirnoff_words(3, 2)) == []
    assert smirnoff_descent_poly(3, 2).is_zero
    assert smirnoff_descent_poly(3, 3) == P(0, 1, 1)
    with pytest.raises(ValueError):
        SmirnoffWord((0, 1, 1, 0), 2)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("r", range(1, 5))
def test_smirnoff_matches_constant_sequence(n, r):
    assert smirnoff_descent_poly(n + 1, r) == s_derangement_enum((r,) * n)


def test_smirnoff_reversal_swaps_statistics():
    for w in smirnoff_words(5, 3):
        assert w.reversed().des == w.asc


def test_colored_statistics():
    sigma = C("2^2 1^1 3^0", 3)
    assert colored_descent_count(sigma) == 2
    ident = C("1^0 2^0 3^0")
    assert colored_descent_count(ident) == 0
    assert not is_colored_derangement(ident)
    one = C("1^1")
    assert colored_excedance_count(one) == 1
    assert is_colored_derangement(one)
    assert str(sigma) == "2^2 1^1 3^0"


def test_colored_validation():
    with pytest.raises(ValueError):
        ColoredPermutation(Permutation((1, 2)), (0, 3), 3)
    with pytest.raises(ValueError):
        ColoredPermutation(Permutation((1, 2)), (0,), 3)


@pytest.mark.parametrize("n", range(1, 6))
def test_one_color_collapses(n):
    assert colored_eulerian(n, 1) == eulerian_poly(n)
    assert colored_derangement_poly(n, 1) == derangement_poly(n)


def test_colored_derangement_formula_small():
    assert colored_derangement_poly(2, 2) == colored_derangement_formula(2, 2)
    assert colored_derangement_poly(2, 2) == P(0, 4, 1)


def test_colored_decomposition_small():
    a, b = symmetric_decomposition(colored_derangement_poly(2, 2), 2)
    assert a == s_derangement_enum((4,))
    assert b.shift(1) == s_derangement_enum((2, 4))


def test_colored_cap():
    with pytest.raises(TooLarge):
        colored_eulerian(5, 3, cap=1000)


@pytest.mark.parametrize("n,r", [(1, 2), (2, 2), (3, 2), (2, 3)])
def test_psi_is_a_descent_transporting_bijection(n, r):
    seen = set()
    for sigma in colored_permutations(n, r):
        e = psi_map(sigma)
        assert e.asc == colored_descent_count(sigma)
        assert psi_inverse(e, r) == sigma
        seen.add(e.entries)
    assert len(seen) == len(list(colored_permutations(n, r)))


def test_psi_identity():
    assert psi_map(C("1^0 2^0 3^0")).entries == (0, 0, 0)


def test_colored_eulerian_is_s_eulerian():
    for n in range(1, 4):
        for r in range(1, 4):
            assert colored_eulerian(n, r) == s_eulerian(tuple(k * r for k in range(1, n + 1)))


def test_bad_numbers_examples():
    assert bad_numbers(C("1^0 5^2 2^1 3^1 4^1 6^0")) == {1, 3, 4}
    assert bad_numbers(C("3^0 2^0 1^0")) == set()
    assert bad_numbers(C("1^0")) == {1}


@pytest.mark.parametrize("n,r", [(1, 2), (2, 2), (3, 2), (3, 3)])
def test_bad_numbers_match_definition(n, r):
    for sigma in colored_permutations(n, r):
        assert bad_numbers(sigma) == bad_numbers_by_definition(sigma)


def test_insert_bad_example():
    out = insert_bad(C("2^2 1^1 3^0", 3), {1, 3, 4}, 6)
    assert str(out) == "1^0 5^2 2^1 3^1 4^1 6^0"
    assert remove_bad(out, {1, 3, 4}) == C("2^2 1^1 3^0", 3)


def test_insert_nothing_is_identity():
    sigma = C("2^1 3^0 1^1", 2)
    assert insert_bad(sigma, set(), 3) == sigma


@pytest.mark.parametrize("n", range(1, 5))
def test_insert_bad_bijection(n):
    r = 2
    for k in range(n + 1):
        for T in combinations(range(1, n + 1), k):
            images = set()
            for sigma in colored_permutations(n - k, r):
                out = insert_bad(sigma, T, n)
                assert set(T) <= bad_numbers(out)
                assert colored_descent_count(out) == colored_descent_count(sigma)
                images.add(out)
            assert images == {x for x in colored_permutations(n, r) if set(T) <= bad_numbers(x)}


@given(st.permutations(range(1, 7)), st.lists(st.integers(0, 2), min_size=6, max_size=6))
@settings(max_examples=100)
def test_parse_roundtrip(values, colors):
    sigma = ColoredPermutation(Permutation(tuple(values)), tuple(colors), 3)
    assert ColoredPermutation.parse(str(sigma), 3) == sigma


@given(st.permutations(range(1, 7)), st.lists(st.integers(0, 2), min_size=6, max_size=6))
@settings(max_examples=100)
def test_psi_roundtrip_random(values, colors):
    sigma = ColoredPermutation(Permutation(tuple(values)), tuple(colors), 3)
    e = psi_map(sigma)
    assert psi_inverse(e, 3) == sigma
    assert e.asc == colored_descent_count(sigma)


@given(st.permutations(range(1, 8)))
def test_cycles_roundtrip(values):
    p = Permutation(tuple(values))
    assert Permutation.from_cycles(p.cycles(), 7) == p
