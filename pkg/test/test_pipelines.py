from fractions import Fraction

import pytest

from rieszkit.checks import ConfigurationError
from rieszkit.coefficients import (UNDETERMINED, DiagonalLambdaCoeffs, KernelExpansion, cylinder_pipeline_from_lambda,
                                   cylinder_terms_from_lambda_means, gaussian_derivative_table,
                                   heat_pipeline_from_omega, heat_terms_from_omega_means, lambda_table_from_diag,
                                   moment_map, omega_diag_from_cylinder, omega_table_from_diag,
                                   render_cylinder_terms, render_heat_terms, sqrt_exp_derivative_table)
from rieszkit.exact_scalar import EULER_GAMMA, pi_power


def test_heat_terms_in_one_dimension():
    terms = heat_terms_from_omega_means(1, 3)
    assert terms == {
        (Fraction(-1, 2), False): {("c", 3, 0): pi_power(1, 2)},
        (Fraction(0), False): {("c", 3, 1): pi_power(0, 1)},
        (Fraction(1, 2), False): {("d", 3, 2): pi_power(1, Fraction(1, 3))},
        (Fraction(1), False): {("c", 3, 3): pi_power(0, Fraction(-1, 3))},
    }
    assert "c_30" in render_heat_terms(terms)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_log_terms_cancel(m):
    for alpha in range(6):
        heat_terms_from_omega_means(m, alpha)
        cylinder_terms_from_lambda_means(m, alpha)


def test_cylinder_terms_in_one_dimension():
    slots = cylinder_terms_from_lambda_means(1, 3)
    assert slots[0] == (Fraction(35, 16), 0)
    assert slots[1] == (1, 0)
    assert slots[2] == (UNDETERMINED, Fraction(-5, 16))
    assert slots[3] == (Fraction(-1, 6), 0)
    assert "[undetermined] t^(1)" in render_cylinder_terms(1, 3, slots)


def test_cylinder_pipeline_recovers_the_line():
    table = lambda_table_from_diag(DiagonalLambdaCoeffs(1, (pi_power(-2),)), 3)
    assert table.a[3][0] == pi_power(-2, Fraction(16, 35))
    cylinder = cylinder_pipeline_from_lambda(table, 3)
    assert cylinder.coefficients[0] == pi_power(-2)


def test_heat_pipeline_recovers_the_line():
    omega = omega_diag_from_cylinder(KernelExpansion(1, "cylinder", (pi_power(-2),)))
    table = omega_table_from_diag(omega, 3)
    heat = heat_pipeline_from_omega(table, 3)
    assert heat.coefficients[0] == pi_power(-1, Fraction(1, 2))


def test_pipelines_check_table_kind():
    table = lambda_table_from_diag(DiagonalLambdaCoeffs(1, (pi_power(-2),)), 2)
    with pytest.raises(ConfigurationError):
        heat_pipeline_from_omega(table, 2)
    with pytest.raises(ConfigurationError):
        cylinder_pipeline_from_lambda(table, 5)


def test_derivative_tables():
    assert gaussian_derivative_table(0) == {(0, 0): 1}
    assert gaussian_derivative_table(1) == {(1, 1): -2}
    assert gaussian_derivative_table(2) == {(0, 1): -2, (2, 2): 4}
    assert sqrt_exp_derivative_table(1) == {1: Fraction(-1, 2)}


def test_moments():
    (term,) = moment_map("lambda", 2)
    assert term.power == -2 and term.coefficient == 1
    (term,) = moment_map("omega", Fraction(1, 2))
    assert term.coefficient == pi_power(1, Fraction(1, 2))
    plain, log = moment_map("omega-cylinder", 1, with_log=True)
    assert plain.coefficient == -EULER_GAMMA
    assert log.has_log and log.coefficient == -1
    with pytest.raises(ConfigurationError):
        moment_map("mu", 1)
    with pytest.raises(ConfigurationError):
        moment_map("lambda", 0)
