from fractions import Fraction

import pytest

from rieszkit.appendix_identities import (HypergeometricSpec, f32_terminating, first_factor_closed, first_factor_sum,
                                          second_factor_closed, second_factor_sum, transform_check, verify_A1)
from rieszkit.checks import ConfigurationError, PoleError


def test_transform_sides_agree():
    lhs, rhs = transform_check(Fraction(-1, 2), -3, 2, Fraction(1, 2), 3)
    assert lhs == rhs == Fraction(-7, 6)


@pytest.mark.parametrize("alpha", range(1, 7))
def test_factor_sums_match_closed_forms(alpha):
    for z in (Fraction(1, 3), Fraction(5, 2), 1, 4, Fraction(17, 7)):
        assert first_factor_sum(alpha, z) == first_factor_closed(alpha, z)
        assert second_factor_sum(alpha, z) == second_factor_closed(alpha, z)
        assert verify_A1(alpha, z) == 1


def test_terminating_series():
    spec = HypergeometricSpec((-1, 2, 3), (4, 5))
    assert spec.length == 1
    assert f32_terminating(spec) == Fraction(7, 10)


def test_bad_series_parameters():
    with pytest.raises(ConfigurationError):
        HypergeometricSpec((Fraction(1, 2), Fraction(1, 3), 2), (1, 1))
    with pytest.raises(ConfigurationError):
        HypergeometricSpec((-2, 1, 1), (-1, 3))
    with pytest.raises(ConfigurationError):
        transform_check(1, 1, -1, 2, 2)


def test_factor_sums_reject_poles_and_orders():
    with pytest.raises(PoleError):
        first_factor_sum(2, -4)
    with pytest.raises(ConfigurationError):
        first_factor_sum(0, 1)
    with pytest.raises(ConfigurationError):
        second_factor_closed(0, 1)
