import pytest
from hypothesis import given, strategies as st

from lecture_hall.errors import DegreeTooHigh, NotSymmetric
from lecture_hall.polynomial import (
    IntPolynomial,
    ONE,
    Z,
    ZERO,
    gamma_vector,
    is_gamma_nonnegative,
    is_log_concave,
    is_symmetric,
    is_unimodal,
    symmetric_decomposition,
)

coeff_lists = st.lists(st.integers(-50, 50), max_size=8)
polys = coeff_lists.map(IntPolynomial)


def P(*c):
    return IntPolynomial(c)


def test_trimming_and_degree():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert ZERO.degree == -1
    assert P(0, 0).is_zero
    assert P(5).degree == 0


def test_arithmetic():
    assert P(1, 1) * P(1, 1) == P(1, 2, 1)
    assert P(1, 2) - P(1, 2) == ZERO
    assert 3 * Z == P(0, 3)
    assert (P(1, 1) ** 3) == P(1, 3, 3, 1)
    assert P(1, 2, 1) // P(1, 1) == P(1, 1)
    with pytest.raises(ArithmeticError):
        P(1, 0, 1) // P(1, 1)


def test_evaluation_and_shift():
    p = P(0, 1, 7, 1)
    assert p(1) == 9
    assert p.shift(2) == P(0, 0, 0, 1, 7, 1)
    assert p.derivative() == P(1, 14, 3)


def test_reversed():
    assert P(0, 1, 7, 1).reversed(4) == P(0, 1, 7, 1)
    assert P(1, 2).reversed(3) == P(0, 0, 2, 1)
    with pytest.raises(DegreeTooHigh):
        P(1, 2, 3).reversed(1)


def test_str():
    assert str(P(1, -3, 0, 1)) == "1 - 3z + z^3"
    assert str(ZERO) == "0"


def test_json_keeps_big_integers():
    big = 2**70 + 1
    p = P(1, big)
    assert p.to_json() == [1, str(big)]
    assert IntPolynomial.from_json(p.to_json()) == p


def test_rejects_non_integers():
    with pytest.raises(TypeError):
        IntPolynomial([1.5])


def test_symmetry_is_degree_relative():
    assert is_symmetric(P(0, 1, 1), 3)
    assert not is_symmetric(P(0, 1, 1), 2)
    assert is_symmetric(ZERO, 4)


def test_unimodal_and_log_concave():
    assert is_unimodal(P(1, 3, 3, 1))
    assert not is_unimodal(P(1, 0, 1))
    assert is_unimodal(P(0, 0, 1, 5, 2))
    assert is_log_concave(P(1, 4, 1))
    assert not is_log_concave(P(1, 1, 5))


def test_gamma_vector():
    g = gamma_vector(P(1, 4, 1), 2)
    assert g.entries == (1, 2)
    assert g.nonnegative
    assert gamma_vector(P(0, 1, 7, 1), 4).entries == (0, 1, 5)
    assert not is_gamma_nonnegative(P(1, 1, 1), 2)
    with pytest.raises(NotSymmetric):
        gamma_vector(P(1, 2), 2)


def test_symmetric_decomposition_example():
    a, b = symmetric_decomposition(P(1, 3, 2), 2)
    assert a == P(1, 2, 1)
    assert b == P(1, 1)
    assert symmetric_decomposition(P(0, 4, 1), 2) == (P(0, 3), P(1, 1))


@given(polys, polys, st.integers(-5, 5))
def test_multiplication_agrees_with_evaluation(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(polys, st.integers(0, 3))
def test_symmetric_decomposition_properties(p, extra):
    d = max(p.degree, 0) + extra
    a, b = symmetric_decomposition(p, d)
    assert a + b.shift(1) == p
    assert is_symmetric(a, d)
    assert is_symmetric(b, d - 1) or b.is_zero


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4), st.integers(0, 2))
def test_gamma_vector_rebuilds(gammas, pad):
    d = 2 * (len(gammas) - 1) + pad
    p = ZERO
    for i, g in enumerate(gammas):
        p = p + (P(1, 1) ** (d - 2 * i)).shift(i) * g
    vec = gamma_vector(p, d)
    assert vec.rebuild() == p
    assert list(vec.entries[: len(gammas)]) == gammas


@given(polys, polys)
def test_exact_division_roundtrip(p, q):
    if q.is_zero:
        return
    assert (p * q) // q == p


def test_constants():
    assert ONE * Z == Z
