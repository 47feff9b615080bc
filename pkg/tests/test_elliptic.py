from fractions import Fraction

import pytest

from divfield import config
from divfield.elliptic import (
    CurveQ,
    Reduction,
    bad_primes,
    conductor,
    count_points,
    count_points_ext,
    frobenius_trace,
    is_anomalous,
    is_semistable,
    is_supersingular,
    minimal_model,
    power_sums,
    reduction_type,
    unit_root,
    _brute_count,
)
from divfield.errors import BadReductionError, BudgetExceeded, HypothesisViolation, InvalidParameterError


def test_aliases_and_text(x0_11):
    assert x0_11.coefficients == (0, -1, 1, -10, -20)
    assert CurveQ.from_text("[0, -1, 1, -10, -20]") == x0_11
    assert x0_11.label() == "[0,-1,1,-10,-20]"
    with pytest.raises(ValueError):
        CurveQ.from_text("[1,2,3]")


def test_singular_curve_rejected():
    with pytest.raises(InvalidParameterError):
        CurveQ(0, 0, 0, 0, 0)


def test_invariants(x0_11, x0p_37):
    assert x0_11.disc == -161051
    assert x0_11.c4 == 496
    assert x0_11.j_invariant == Fraction(-122023936, 161051)
    assert x0p_37.disc == 37


def test_minimal_model_of_scaled_curve(x0_11):
    # u = 2 scaling of X0(11): a_i -> 2^i a_i
    scaled = CurveQ(0, -4, 8, -160, -1280)
    assert minimal_model(scaled) == x0_11
    assert scaled.minimal == x0_11
    assert x0_11.minimal == x0_11


def test_bad_primes_and_conductor(x0_11, x0p_37):
    assert bad_primes(x0_11) == [11]
    assert is_semistable(x0_11)
    assert conductor(x0_11) == 11
    assert conductor(x0p_37) == 37
    additive = CurveQ(0, 0, 0, -1, 0)
    assert not is_semistable(additive)
    with pytest.raises(HypothesisViolation):
        conductor(additive)


@pytest.mark.parametrize("q, a", [(2, -2), (3, -1), (5, 1), (7, -2), (13, 4)])
def test_traces_x0_11(x0_11, q, a):
    assert frobenius_trace(x0_11, q) == a


def test_trace_at_8689(x0_11):
    assert frobenius_trace(x0_11, 8689) == 90


def test_point_count_4391(x0p_37):
    count, a = count_points(x0p_37, 4391)
    assert count == 4425
    assert a == 4391 + 1 - 4425


@pytest.mark.parametrize("q", [3, 5, 7, 13, 17, 19])
def test_character_sum_matches_brute_force(x0_11, q):
    assert count_points(x0_11, q)[0] == _brute_count(x0_11, q)


def test_count_points_guards(x0_11, monkeypatch):
    with pytest.raises(BadReductionError):
        count_points(x0_11, 11)
    with pytest.raises(InvalidParameterError):
        count_points(x0_11, 15)
    monkeypatch.setattr(config, "MAX_Q", 100)
    with pytest.raises(BudgetExceeded):
        count_points(x0_11, 101)


def test_budget_applies_after_a_cached_count(x0_11, monkeypatch):
    count_points(x0_11, 103)
    monkeypatch.setattr(config, "MAX_Q", 100)
    with pytest.raises(BudgetExceeded):
        count_points(x0_11, 103)


def test_extension_counts():
    assert count_points_ext(5, 7, 1) == 3
    assert count_points_ext(0, 11, 2) == 12 ** 2
    assert power_sums(90, 8689, 2) == 90 ** 2 - 2 * 8689
    assert power_sums(3, 5, 0) == 2


def test_supersingular_and_anomalous(x0_11):
    assert not is_supersingular(x0_11, 7)
    assert is_anomalous(x0_11, 5)
    assert not is_anomalous(x0_11, 7)
    # y^2 = x^3 + 1 is supersingular at primes 2 mod 3
    assert is_supersingular(CurveQ(0, 0, 0, 0, 1), 5)


def test_reduction_types(x0_11, x0p_37):
    assert reduction_type(x0_11, 11) is Reduction.SPLIT
    assert reduction_type(x0_11, 7) is Reduction.GOOD
    assert reduction_type(CurveQ(0, 0, 0, -1, 0), 2) is Reduction.ADDITIVE
    assert reduction_type(x0p_37, 37) in (Reduction.SPLIT, Reduction.NONSPLIT)


def test_unit_roots(x0_11):
    alpha = unit_root(x0_11, 7, 1)
    assert alpha.value == 5
    alpha9 = unit_root(x0_11, 3, 2)
    assert alpha9.value % 3 == 2
    assert (alpha9.value ** 2 + alpha9.value + 3) % 9 == 0


def test_unit_root_hypotheses(x0_11):
    with pytest.raises(HypothesisViolation):
        unit_root(x0_11, 5, 2)
