import pytest

from divfield.errors import InvalidParameterError, NonUnitError
from divfield.mat2 import (
    Mat2,
    crt_join,
    crt_split,
    group_exponent,
    matrix_order,
    mu_depth,
    prime_power,
    prime_power_factors,
    smith,
)


def test_parse_and_format():
    g = Mat2.parse("[[2, -1],[3,20]] mod 9")
    assert g.entries() == (2, 8, 3, 2)
    assert g.format() == "[[2,8],[3,2]] mod 9"
    assert Mat2.parse(g.format()) == g
    assert Mat2.parse("[[1,0],[0,1]]", 63) == Mat2.identity(63)


def test_parse_errors():
    with pytest.raises(ValueError):
        Mat2.parse("[[1,2],[3]] mod 9")
    with pytest.raises(ValueError):
        Mat2.parse("[[1,0],[0,1]]")
    with pytest.raises(ValueError):
        Mat2.parse("[[1,0],[0,1]] mod 9", 7)


def test_ring_operations():
    g = Mat2(2, 6, 3, 2, 9)
    assert g.det() == 4
    assert g.trace() == 4
    assert g * g.inverse() == Mat2.identity(9)
    assert g ** -1 == g.inverse()
    assert g ** 0 == Mat2.identity(9)
    assert g.sub_identity() == g - Mat2.identity(9)
    assert g.apply(1, 0) == (2, 3)


def test_conjugate():
    g = Mat2(2, 6, 3, 2, 9)
    h = Mat2(1, 1, 0, 1, 9)
    c = g.conjugate(h)
    assert c == h * g * h.inverse()
    assert (c.det(), c.trace()) == (g.det(), g.trace())


def test_singular_inverse():
    with pytest.raises(NonUnitError):
        Mat2(3, 0, 0, 1, 9).inverse()


@pytest.mark.parametrize("g, depth", [
    (Mat2.scalar(7, 625), 4),
    (Mat2(2, 20, 5, 2, 625), 1),
    (Mat2(0, 1, -313, -1, 9), 0),
])
def test_mu_depth(g, depth):
    assert mu_depth(g) == depth


def test_smith():
    zero = Mat2(0, 0, 0, 0, 27)
    assert (smith(zero).e1, smith(zero).e2) == (3, 3)
    s = smith(Mat2(3, 0, 0, 9, 27))
    assert (s.e1, s.e2) == (1, 2)
    s = smith(Mat2(1, 0, 0, 1, 27))
    assert (s.e1, s.e2) == (0, 0)


def test_crt_split_and_join():
    g = Mat2(2, 42, 21, 20, 63)
    parts = crt_split(g)
    assert parts == [Mat2(2, 6, 3, 2, 9), Mat2(2, 0, 0, 6, 7)]
    assert crt_join(parts) == g
    assert crt_split(Mat2.identity(63)) == [Mat2.identity(9), Mat2.identity(7)]


def test_prime_powers():
    assert prime_power(625) == (5, 4)
    assert prime_power_factors(4425) == ((3, 1), (5, 2), (59, 1))
    with pytest.raises(InvalidParameterError):
        prime_power(63)


@pytest.mark.parametrize("g, order", [
    (Mat2.identity(9), 1),
    (Mat2(0, -1, 1, 0, 9), 4),
    (Mat2(0, -3, 1, -1, 7), 48),
    (Mat2(1, 1, 0, 1, 27), 27),
])
def test_matrix_order(g, order):
    assert matrix_order(g) == order
    assert group_exponent(g.modulus) % order == 0


def test_modulus_mismatch():
    with pytest.raises(InvalidParameterError):
        Mat2.identity(9) * Mat2.identity(7)
