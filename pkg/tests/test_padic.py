import pytest

from divfield.errors import InvalidParameterError, NonUnitError, PrecisionError
from divfield.padic import (
    PValued,
    TruncatedPadic,
    hensel_root,
    order_mod,
    sqrt_mod,
    teichmuller,
    unit_order,
    v_alpha,
    val,
    z_mu,
)


@pytest.mark.parametrize("x, p, cap, expected", [
    (15, 3, 2, 1),
    (0, 5, 4, 4),
    (-1188, 3, 2, 2),
    (7, 7, 5, 1),
    (1, 3, 3, 0),
])
def test_val(x, p, cap, expected):
    assert val(x, p, cap) == expected


@pytest.mark.parametrize("alpha, order, depth", [(2, 500, 1), (32, 100, 2), (1, 1, 4)])
def test_unit_order_and_depth_mod_625(alpha, order, depth):
    a = PValued(alpha, 5, 4)
    assert unit_order(a) == order
    assert v_alpha(a) == depth


def test_depth_of_one_is_capped():
    assert v_alpha(PValued(1, 3, 2)) == 2


def test_order_mod_trivial_group():
    assert order_mod(2, 5, 0) == 1
    assert order_mod(2, 5, 1) == 4


def test_non_unit_rejected():
    with pytest.raises(NonUnitError):
        unit_order(PValued(10, 5, 2))


def test_even_prime_rejected():
    with pytest.raises(InvalidParameterError):
        PValued(1, 2, 3)


def test_sqrt_mod():
    assert sqrt_mod(PValued(4, 7, 1)).value == 2
    assert sqrt_mod(PValued(3, 7, 1)) is None
    assert sqrt_mod(PValued(2, 7, 2)).value == 10


def test_sqrt_mod_of_non_unit():
    root = sqrt_mod(PValued(49 * 2, 7, 4))
    assert root.value ** 2 % 7 ** 4 == 98
    assert sqrt_mod(PValued(7 * 2, 7, 4)) is None


@pytest.mark.parametrize("alpha, p, n", [(2, 5, 4), (3, 7, 2), (1, 3, 3)])
def test_teichmuller(alpha, p, n):
    w = teichmuller(PValued(alpha, p, n)).value
    assert pow(w, p - 1, p ** n) == 1
    assert w % p == alpha % p


def test_hensel_root_golden_ratio():
    root = hensel_root([-1, -1, 1], 8, 11, 4).residue(4)
    assert root % 11 == 8
    assert (root * root - root - 1) % 11 ** 4 == 0


def test_hensel_root_rejects_double_root():
    # x^2 - x - 1 = (x - 3)^2 mod 5
    with pytest.raises(NonUnitError):
        hensel_root([-1, -1, 1], 3, 5, 4)


def test_hensel_root_linear():
    assert hensel_root([-17, 1], 17 % 5, 5, 3).residue(3) == 17


def test_hensel_root_unit_root_mod_9():
    # x^2 - a_3 x + 3 with a_3 = -1
    root = hensel_root([3, 1, 1], 2, 3, 2).residue(2)
    assert (root * root + root + 3) % 9 == 0
    assert root % 3 == 2


def test_hensel_root_rejects_non_root():
    with pytest.raises(InvalidParameterError):
        hensel_root([-2, 0, 1], 1, 7, 3)


def test_hensel_root_needs_simple_root():
    with pytest.raises(NonUnitError):
        hensel_root([0, 0, 1], 0, 5, 3)


def test_z_mu_over_5():
    assert z_mu(PValued(2, 5, 4), 1, 4).residue(4) == 5 + 4 * 25 + 125


def test_z_mu_over_3():
    assert z_mu(PValued(2, 3, 2), 1, 2).residue(2) == 3


def test_truncated_arithmetic():
    x = TruncatedPadic.from_int(10, 5, 3)
    assert (x.unit, x.valuation, x.precision) == (2, 1, 2)
    y = TruncatedPadic.from_int(15, 5, 3)
    assert (x + y).residue(3) == 25
    assert (x * y).residue(3) == 150 % 125
    assert (x - x).is_zero()


def test_zero_marker_records_reached_precision():
    z = TruncatedPadic.from_int(0, 5, 3)
    assert z.is_zero()
    assert z.capped_valuation(3) == 3
    assert z.capped_valuation(2) == 2
    with pytest.raises(PrecisionError):
        z.capped_valuation(10)
    assert z.residue(3) == 0
    with pytest.raises(PrecisionError):
        z.residue(4)


def test_residue_needs_enough_digits():
    with pytest.raises(PrecisionError):
        TruncatedPadic.from_int(7, 5, 2).residue(3)


def test_cancellation_cannot_report_more_digits_than_it_has():
    x = TruncatedPadic.from_int(7, 5, 3)
    diff = x - x
    assert diff.capped_valuation(3) == 3
    with pytest.raises(PrecisionError):
        diff.capped_valuation(4)
