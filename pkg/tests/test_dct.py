from math import gcd
import random

import pytest

from divfield.conjugacy import ClassLabel, Kind, enumerate_classes, representative
from divfield.dct import (
    DCType,
    _mult_strata,
    _ord_strata,
    mult_dct,
    ord_dct,
    std_dct,
    std_dct2,
    tensor,
    tensor_all,
    to_factorization,
    u_values,
    unramified_dct,
    unramified_dct_N,
)
from divfield.errors import InvalidParameterError, NonUnitError
from divfield.mat2 import Mat2
from divfield.oracle import cyclic_orbit_type


def T(text: str) -> DCType:
    return DCType.parse(text)


def test_parse_and_format():
    d = T("625 x 500 + 625 × 100")
    assert d.terms == ((625, 100, 1), (625, 500, 1))
    assert d.format() == "625 x 100 + 625 x 500"
    r = T("12 x (6,3) + 6*(6,1)")
    assert r.format() == "6 x (6,1) + 12 x (6,3)"
    assert T(r.format()) == r
    assert not r.is_unramified()


def test_from_terms_merges_and_validates():
    assert DCType.from_terms([(2, 3, 1), (0, 5, 1), (1, 3, 1)]) == T("3 x 3")
    with pytest.raises(InvalidParameterError):
        DCType.from_terms([(1, 6, 4)])
    with pytest.raises(ValueError):
        T("3 y 4")


def test_measures():
    d = T("6 x (6,1) + 12 x (6,3) + 36 x (9,9)")
    assert d.mass() == 36 + 72 + 324
    assert d.prime_count() == 54
    assert d.min_degree() == 1
    assert d.scale(2) == T("12 x (6,1) + 24 x (6,3) + 72 x (9,9)")
    assert d + d == d.scale(2)
    assert d.to_json()[0] == {"count": 6, "b": 6, "c": 1}


def test_to_factorization():
    assert to_factorization(T("36 x (9,9)")) == [(36, 9, 1)]
    assert to_factorization(T("144 x 24")) == [(144, 1, 24)]
    assert to_factorization(DCType.unit()) == [(1, 1, 1)]


@pytest.mark.parametrize("args, expected", [
    ((5, 4, 4, 1), "750 x 500"),
    ((5, 4, 4, 1, 2), "625 x 100 + 625 x 500"),
    ((5, 4, 4, 1, 3), "625 x 20 + 500 x 100 + 625 x 500"),
    ((5, 4, 4, 1, 4), "625 x 4 + 500 x 20 + 500 x 100 + 625 x 500"),
    ((3, 2, 2, 1, 1), "12 x 6"),
])
def test_std_dct(args, expected):
    assert std_dct(*args) == T(expected)


def test_std_dct_range_checks():
    with pytest.raises(InvalidParameterError):
        std_dct(5, 4, 4, 3, 2)
    with pytest.raises(InvalidParameterError):
        std_dct(5, 4, 5, 1)


def test_std_dct2():
    assert std_dct2(7, 1, 3, 2, 1) == T("3 x 2 + 2 x 3 + 6 x 6")
    assert std_dct2(7, 1, 1, 6, 1) == T("6 x 1 + 7 x 6")
    with pytest.raises(InvalidParameterError):
        std_dct2(7, 1, 2, 2, 1)
    with pytest.raises(InvalidParameterError):
        std_dct2(7, 1, 3, 2, 0)


def test_tensor_examples():
    assert tensor(T("12 x 6"), T("3 x 2 + 2 x 3 + 6 x 6")) == T("576 x 6")
    assert tensor(T("6 x 1 + 4 x 3 + 6 x 9"), T("6 x 1 + 7 x 6")) == \
        T("36 x 1 + 24 x 3 + 126 x 6 + 36 x 9 + 126 x 18")


def _random_type(rng: random.Random) -> DCType:
    return DCType.from_terms(
        (rng.randint(1, 20), b * c, c)
        for b, c in ((rng.randint(1, 12), rng.choice([1, 1, 2, 3])) for _ in range(rng.randint(1, 4))))


def test_tensor_laws():
    rng = random.Random(7)
    unit = DCType.unit()
    for _ in range(200):
        a, b, c = (_random_type(rng) for _ in range(3))
        assert tensor(a, unit) == a
        assert tensor(a, b) == tensor(b, a)
        assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))
        assert tensor(a, b).mass() == a.mass() * b.mass()
    assert tensor_all([]) == unit


def test_u_values_examples():
    assert u_values(ClassLabel(Kind.I_MINUS, 3, 2, 2, 2, mu=1)).u2 == 1
    with pytest.raises(InvalidParameterError):
        u_values(ClassLabel(Kind.I, 3, 2, 2))


def test_unramified_examples():
    assert unramified_dct(ClassLabel(Kind.I_PLUS, 5, 4, 32, 4, mu=1)) == T("750 x 500")
    assert unramified_dct(ClassLabel(Kind.I_MINUS, 3, 2, 2, 2, mu=1)) == T("12 x 6")
    assert unramified_dct(ClassLabel(Kind.IV, 7, 1, 4, 6)) == T("1 x 48")


@pytest.mark.parametrize("matrix, expected", [
    ("[[2,230],[5,2]] mod 625", "625 x 4 + 500 x 20 + 500 x 100 + 625 x 500"),
    ("[[2,42],[21,20]] mod 63", "576 x 6"),
    ("[[-1,1],[-1,-1]] mod 63", "144 x 24"),
    ("[[1,0],[0,1]] mod 63", "3456 x 1"),
])
def test_unramified_dct_N(matrix, expected):
    assert unramified_dct_N(Mat2.parse(matrix)) == T(expected)


@pytest.mark.parametrize("p, n", [(3, 1), (5, 1), (3, 2), (7, 1)])
def test_unramified_matches_orbits(p, n):
    for label in enumerate_classes(p, n):
        assert unramified_dct(label) == cyclic_orbit_type(representative(label)), label.format()


@pytest.mark.slow
@pytest.mark.parametrize("p, n", [(5, 2), (3, 3)])
def test_unramified_matches_orbits_deep(p, n):
    for label in enumerate_classes(p, n):
        assert unramified_dct(label) == cyclic_orbit_type(representative(label)), label.format()


def test_mult_dct_at_11():
    nine = mult_dct(3, 2, 11 % 9, 1, 0, 0)
    seven = mult_dct(7, 1, 11 % 7, 1, 0, 0)
    assert tensor(nine, seven) == \
        T("6 x (6,1) + 12 x (6,3) + 36 x (9,9) + 6 x (42,7) + 12 x (42,21) + 36 x (63,63)")


def test_mult_dct_checks():
    with pytest.raises(InvalidParameterError):
        mult_dct(3, 2, 2, 0, 0, 0)
    with pytest.raises(InvalidParameterError):
        mult_dct(3, 2, 2, 1, 2, 1)
    with pytest.raises(NonUnitError):
        mult_dct(3, 2, 3, 1, 0, 0)


def test_ord_dct():
    assert ord_dct(3, 2, 2) == T("1 x (54,9) + 1 x (12,6) + 1 x (6,6)")
    assert tensor(T("1 x 48"), ord_dct(3, 2, 2)) == T("18 x (48,6) + 6 x (432,9)")
    assert ord_dct(3, 2, 2).mass() == 72
    with pytest.raises(NonUnitError):
        ord_dct(7, 1, 0)


def test_ord_dct_with_frobenius_at_7():
    # companion of x^2 + 2x + 7, a_7 = -2
    frob7 = unramified_dct_N(Mat2(0, -7, 1, -2, 9))
    assert tensor(ord_dct(7, 1, 5), frob7) == \
        T("18 x (6,6) + 18 x (18,6) + 18 x (42,7) + 18 x (126,7)")


def test_mult_dct_between_regimes():
    # 0 < b1 < v_alpha with v_alpha - b1 >= 2: the (p-1)^2 sum is non-empty
    d = mult_dct(5, 3, 1, 1, 1, 1)
    assert d == T("500 x (1,1) + 400 x (5,5) + 500 x (25,25)")
    assert d.mass() == 5 ** 6 - 5 ** 4
    assert mult_dct(3, 3, 10, 1, 1, 2) == T("54 x (3,1) + 54 x (9,3)")


def _units(m: int) -> list[int]:
    return [a for a in range(1, m) if gcd(a, m) == 1]


@pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)])
def test_mult_dct_matches_stratum_count(p, n):
    for alpha in _units(p ** n):
        for eps in (1, -1):
            for b1 in range(n + 1):
                for b2 in range(b1, n + 1):
                    closed = mult_dct(p, n, alpha, eps, b1, b2)
                    assert closed == _mult_strata(p, n, alpha, eps, b1, b2), (alpha, eps, b1, b2)
                    assert closed.mass() == p ** (2 * n) - p ** (2 * n - 2)


@pytest.mark.slow
@pytest.mark.parametrize("p, n", [(3, 4), (5, 3)])
def test_mult_dct_matches_stratum_count_deep(p, n):
    for alpha in _units(p ** n):
        for eps in (1, -1):
            for b1 in range(n + 1):
                for b2 in range(b1, n + 1):
                    assert mult_dct(p, n, alpha, eps, b1, b2) == _mult_strata(p, n, alpha, eps, b1, b2)


@pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2)])
def test_ord_dct_matches_stratum_count(p, n):
    for alpha in _units(p ** n):
        assert ord_dct(p, n, alpha) == _ord_strata(p, n, alpha), alpha
