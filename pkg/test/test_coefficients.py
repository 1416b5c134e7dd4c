from fractions import Fraction

import numpy as np
import pytest

from rieszkit.checks import ConfigurationError, UndeterminedCoefficientError
from rieszkit.coefficients import (UNDETERMINED, DiagonalLambdaCoeffs, DiagonalOmegaCoeffs, KernelExpansion, OmegaMeans,
                                   cylinder_from_omega_diag, hardy_kernel_coeffs, heat_from_lambda_diag,
                                   hormander_weights, lambda_diag_from_heat, lambda_diag_from_omega_diag,
                                   lambda_full_from_omega, lambda_table_from_diag, omega_diag_from_cylinder,
                                   omega_diag_from_lambda_diag, omega_full_from_lambda, omega_table_from_diag,
                                   rescale_log_scale, verify_consistency)
from rieszkit.coefficients.types import odd_positive
from rieszkit.exact_scalar import LN2, ZERO, pi_power, rational


def _rationals(rng, count):
    return tuple(Fraction(int(rng.randint(-30, 31)), int(rng.randint(1, 8))) for _ in range(count))


def test_heat_to_lambda_on_the_line():
    heat = KernelExpansion(1, "heat", (pi_power(-1, Fraction(1, 2)), 0, 0))
    diag = lambda_diag_from_heat(heat)
    assert diag.a[0] == pi_power(-2)
    assert diag.a[1] == 0


def test_lambda_to_omega_leaves_odd_slots_undetermined():
    diag = DiagonalLambdaCoeffs(1, (pi_power(-2), Fraction(-1, 2), 1))
    omega = omega_diag_from_lambda_diag(diag)
    assert omega.c[0] == pi_power(-2)
    assert omega.c[1] == Fraction(-1, 2)
    assert omega.c[2] is UNDETERMINED
    assert not omega.d[2].is_zero()
    assert omega.d[1] == ZERO


def test_undetermined_entries_propagate():
    omega = DiagonalOmegaCoeffs(1, (1, 0, UNDETERMINED), (0, 0, 1))
    cylinder = cylinder_from_omega_diag(omega)
    assert cylinder.coefficients[2] is UNDETERMINED
    assert omega_diag_from_cylinder(cylinder).c[2] is UNDETERMINED
    with pytest.raises(UndeterminedCoefficientError):
        DiagonalLambdaCoeffs(1, (UNDETERMINED,))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lambda_omega_round_trip(m):
    rng = np.random.RandomState(8446 + m)
    diag = DiagonalLambdaCoeffs(m, _rationals(rng, 7))
    back = lambda_diag_from_omega_diag(omega_diag_from_lambda_diag(diag))
    assert back.a == diag.a


@pytest.mark.parametrize("m", [1, 2, 3])
def test_heat_lambda_round_trip(m):
    rng = np.random.RandomState(17 + m)
    heat = KernelExpansion(m, "heat", tuple(rational(q) * pi_power(-m) for q in _rationals(rng, 6)))
    assert heat_from_lambda_diag(lambda_diag_from_heat(heat)) == heat


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cylinder_omega_round_trip(m):
    rng = np.random.RandomState(29 + m)
    values = _rationals(rng, 7)
    logs = tuple(q if odd_positive(m, s) else 0 for s, q in enumerate(_rationals(rng, 7)))
    cylinder = KernelExpansion(m, "cylinder", values, logs)
    assert cylinder_from_omega_diag(omega_diag_from_cylinder(cylinder)) == cylinder


def test_consistency_sweep():
    for m in (1, 2, 3):
        for alpha in range(1, 9):
            for s in range(alpha + 1):
                assert verify_consistency(alpha, m, s).passed, (alpha, m, s)


def test_consistency_rejects_bad_indices():
    with pytest.raises(ConfigurationError):
        verify_consistency(0, 1, 0)


def test_hormander_weights():
    assert hormander_weights(2, 1) == {1: 2, 2: -1}
    for k in (2, 3, 4):
        for alpha in (1, 2, 5):
            weights = hormander_weights(k, alpha)
            assert sum(weights.values()) == 1
            assert min(weights) == alpha and max(weights) == alpha * k
    with pytest.raises(ConfigurationError):
        hormander_weights(1, 2)


def test_omega_table_below_the_pole_is_carried_by_d():
    diag = DiagonalOmegaCoeffs(1, (1, 0, 0, 0, 0), (0, 0, 0, 0, 24))
    table = omega_table_from_diag(diag, 1)
    assert table.c[1][4] == -1
    assert table.c[0][4] == 2
    assert table.c[1][0] == Fraction(1, 2)
    assert table.d[1][4] == 0


def test_lambda_table_recursion():
    diag = DiagonalLambdaCoeffs(1, (pi_power(-2), Fraction(-1, 2)))
    table = lambda_table_from_diag(diag, 3)
    assert table.a[3][0] == pi_power(-2, Fraction(16, 35))
    assert table.a[1][1] == Fraction(-1, 2)
    with pytest.raises(ConfigurationError):
        lambda_table_from_diag(diag, 0)


def test_containers_validate_log_slots():
    with pytest.raises(ConfigurationError):
        KernelExpansion(1, "heat", (1, 1), (0, 1))
    with pytest.raises(ConfigurationError):
        DiagonalOmegaCoeffs(1, (1, 1), (0, 1))
    with pytest.raises(ConfigurationError):
        KernelExpansion(0, "heat", (1,))


def test_hardy_kernel_coefficients():
    assert hardy_kernel_coeffs(2, 1) == [(0, -1)]
    assert hardy_kernel_coeffs(Fraction(1, 2), 1) == [(0, Fraction(1, 2))]
    assert hardy_kernel_coeffs(Fraction(1, 2), 2) == [(0, Fraction(3, 4)), (1, 0)]
    with pytest.raises(ConfigurationError):
        hardy_kernel_coeffs(1, 2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_full_maps_between_lambda_and_omega(m):
    rng = np.random.RandomState(41 + m)
    diag = DiagonalLambdaCoeffs(m, _rationals(rng, 7))
    table = lambda_table_from_diag(diag, 6)
    omega_diag = omega_diag_from_lambda_diag(diag)
    for alpha in range(1, 7):
        means = omega_full_from_lambda(table, alpha)
        assert lambda_full_from_omega(means) == table.a[alpha][:alpha + 1]
        assert means.undetermined == frozenset(s for s in range(alpha + 1) if odd_positive(m, s))
        # the order-alpha row agrees with the diagonal map in its last slot
        if odd_positive(m, alpha):
            assert means.c[alpha] is UNDETERMINED
        else:
            assert means.c[alpha] == omega_diag.c[alpha]
        assert means.d[alpha] == omega_diag.d[alpha]
    with pytest.raises(ConfigurationError):
        omega_full_from_lambda(table, 7)


def test_log_scale_rescaling_moves_only_log_slots():
    means = OmegaMeans(1, 3, (1, 0, 4, UNDETERMINED), (0, 0, 5, 1))
    rescaled = rescale_log_scale(means, LN2)
    assert rescaled.c[:3] == (1, 0, 4 - 5 * LN2)
    assert rescaled.c[3] is UNDETERMINED
    assert rescaled.d == means.d
    with pytest.raises(ConfigurationError):
        OmegaMeans(1, 3, (1, 0), (0,))


def test_random_diagonal_round_trips():
    rng = np.random.RandomState(8446)
    for _ in range(100):
        m, size = int(rng.randint(1, 4)), int(rng.randint(1, 10))
        diag = DiagonalLambdaCoeffs(m, tuple(rational(q) * pi_power(-m) for q in _rationals(rng, size)))
        assert lambda_diag_from_omega_diag(omega_diag_from_lambda_diag(diag)) == diag
        assert lambda_diag_from_heat(heat_from_lambda_diag(diag)) == diag
        table = lambda_table_from_diag(diag, size - 1)
        assert [table.a[s][s] for s in range(size)] == list(diag.a)
        logs = tuple(q if odd_positive(m, s) else 0 for s, q in enumerate(_rationals(rng, size)))
        cylinder = KernelExpansion(m, "cylinder", _rationals(rng, size), logs)
        assert cylinder_from_omega_diag(omega_diag_from_cylinder(cylinder)) == cylinder
