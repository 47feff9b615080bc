import random

import pytest

from divfield.conjugacy import ClassLabel, Kind, classify, classify_N
from divfield.elliptic import frobenius_trace
from divfield.errors import BadReductionError, InvalidParameterError
from divfield.finite_field import coefficients
from divfield.mat2 import Mat2
from divfield.torsion import (
    DivisionPolynomials,
    FrobeniusData,
    acts_as_scalar,
    delta_q,
    integral_frobenius_entries,
    integral_frobenius_matrix,
    frobenius_class,
    frobenius_class_N,
    frobenius_data,
    frobenius_matrix,
    frobenius_matrix_oracle,
    frobenius_mu,
    matrix_from_data,
)


def test_division_polynomial_degrees(x0_11):
    dp = DivisionPolynomials(x0_11, 13)
    for n in (3, 5, 7):
        assert dp[n].degree() == (n * n - 1) // 2
    assert dp.torsion_poly(4).degree() == 3 + 6


def test_rational_five_torsion_is_a_root(x0_11):
    # (5, 5) and (16, 60) generate the rational 5-torsion of X0(11)
    for q in (13, 31, 8689):
        dp = DivisionPolynomials(x0_11, q)
        f5 = coefficients(dp.torsion_poly(5))
        for x in (5, 16):
            assert sum(c * pow(x, i, q) for i, c in enumerate(f5)) % q == 0


def test_multiple_x_doubles_a_point(x0_11):
    q = 31
    dp = DivisionPolynomials(x0_11, q)
    num, den = dp.multiple_x(2)
    # [2](5, 5) = (16, -61) on X0(11)

    def at(f, x):
        return sum(c * pow(x, i, q) for i, c in enumerate(coefficients(f))) % q

    assert (5 - at(num, 5) * pow(at(den, 5), -1, q)) % q == 16


def test_frobenius_mu_at_8689(x0_11):
    assert frobenius_mu(x0_11, 8689, 7, 3) == 1
    assert frobenius_mu(x0_11, 8689, 3, 3) == 0


def test_mu_without_field_work(x0_11):
    # a_7^2 - 4*7 = -24 has 5-adic valuation 0
    assert frobenius_mu(x0_11, 7, 5, 4) == 0


def test_mu_rejects_equal_primes(x0_11):
    with pytest.raises(InvalidParameterError):
        frobenius_mu(x0_11, 7, 7, 2)


def test_acts_as_scalar_matches_mu(x0_11):
    assert acts_as_scalar(x0_11, 8689, 7, 1)
    assert not acts_as_scalar(x0_11, 8689, 5, 1)


def test_delta_at_8689(x0_11):
    assert delta_q(x0_11, 8689) == (-544, 7, 0)
    assert integral_frobenius_entries(x0_11, 8689) == (45, 7, -952, 45)
    g = integral_frobenius_matrix(x0_11, 8689, 63)
    assert (g.trace(), g.det()) == (90 % 63, 8689 % 63)


def test_delta_squarefree_case(x0_11):
    # a_7^2 - 28 = -24 is already a fundamental discriminant
    assert delta_q(x0_11, 7) == (-24, 1, 0)


def test_frobenius_class_313(x0_11):
    labels = frobenius_class_N(x0_11, 313, 63)
    assert labels == (ClassLabel(Kind.II, 3, 2, 4, 0), ClassLabel(Kind.III, 7, 1, 1, 5))
    assert frobenius_class(x0_11, 313, 3, 2) == labels[0]


def test_frobenius_class_at_2(x0_11):
    assert classify_N(frobenius_matrix(x0_11, 2, 63)) == classify_N(Mat2(-1, 1, -1, -1, 63))


def test_frobenius_class_at_73(x0p_37):
    g = frobenius_matrix(x0p_37, 73, 4425)
    assert classify_N(g) == classify_N(Mat2(0, 1, -73, -1, 4425))


def test_frobenius_matrix_guards(x0_11):
    with pytest.raises(InvalidParameterError):
        frobenius_matrix(x0_11, 7, 63)
    with pytest.raises(InvalidParameterError):
        frobenius_matrix(x0_11, 13, 10)
    with pytest.raises(BadReductionError):
        frobenius_matrix(x0_11, 11, 63)


def test_matrix_from_data_caps_depth():
    g = matrix_from_data(90, 8689, {7: 5}, 7)
    assert g.is_scalar()
    h = matrix_from_data(90, 8689, {7: 1}, 49)
    assert (h.a, h.b) == (45, 7)


def test_frobenius_data_round_trip(x0_11):
    data = frobenius_data(x0_11, 8689, 63, with_delta=True)
    assert data.a_q == 90
    assert data.mu == {3: 0, 7: 1}
    assert (data.disc, data.b_q, data.delta) == (-544, 7, 0)
    assert FrobeniusData.from_json(data.to_json()) == data
    assert matrix_from_data(data.a_q, 8689, data.mu, 63) == frobenius_matrix(x0_11, 8689, 63)


@pytest.mark.slow
def test_oracle_class_313(x0_11):
    g = frobenius_matrix_oracle(x0_11, 313, 9)
    assert classify(g) == ClassLabel(Kind.II, 3, 2, 4, 0)


def _oracle_agrees(E, q, L, seed):
    g = frobenius_matrix_oracle(E, q, L, seed=seed)
    assert (g.trace(), g.det()) == (frobenius_trace(E, q) % L, q % L)
    assert classify(g) == classify(frobenius_matrix(E, q, L))
    assert g.is_scalar() == acts_as_scalar(E, q, L, 1)


@pytest.mark.parametrize("q, L", [(13, 3), (17, 3), (19, 5), (31, 5), (41, 3)])
def test_oracle_small_cases(x0_11, q, L):
    _oracle_agrees(x0_11, q, L, seed=q)


@pytest.mark.slow
def test_oracle_random_pairs(x0_11, x0p_37):
    rng = random.Random(5)
    primes = [q for q in range(13, 400) if all(q % d for d in range(2, int(q ** 0.5) + 1))]
    checked = 0
    while checked < 50:
        E = rng.choice([x0_11, x0p_37])
        q, L = rng.choice(primes), rng.choice([3, 5, 7, 9])
        if q in (11, 37) or q % L == 0:
            continue
        _oracle_agrees(E, q, L, seed=rng.randrange(1000))
        checked += 1
