import math
from fractions import Fraction

import numpy as np
import pytest
from allennlp.common import Params

from rieszkit.checks import ConfigurationError, UnsupportedObservableError
from rieszkit.coefficients import (UNDETERMINED, heat_from_lambda_diag, lambda_diag_from_omega_diag,
                                   omega_diag_from_lambda_diag)
from rieszkit.coefficients.types import odd_positive
from rieszkit.exact_scalar import ZERO, pi_power
from rieszkit.manifolds import (Circle, HalfLine, Interval, Line, Manifold, Observable, compare_kernel_expansion,
                                compare_means, euler_maclaurin_prediction, expected_coeffs,
                                offdiagonal_decay_check, spectral_measure, trapezoid_defect)
from rieszkit.manifolds.manifold import line_kernel

TRACE = Observable("trace")


def test_observables():
    assert Observable("diagonal", 0.5).describe() == "E(0.5, 0.5)"
    assert Observable("diagonal", 0.5, 0.25).off_diagonal
    assert not Observable("diagonal", 0.5, 0.5).off_diagonal
    with pytest.raises(ConfigurationError):
        Observable("diagonal")
    with pytest.raises(ConfigurationError):
        Observable("density", 0.0)


def test_spectral_measures():
    circle = spectral_measure(Circle(1.0), TRACE, 4.0)
    assert circle.atoms == [(0.0, 1.0), (pytest.approx(math.pi), 2.0)]
    assert circle.cutoff == 4.0
    interval = spectral_measure(Interval(1.0), TRACE, 4.0)
    assert interval.atoms == [(pytest.approx(math.pi), 1.0)]
    line = Line().spectral_measure(Observable("diagonal", 0.0))
    assert not line.is_atomic and line.atoms == []
    assert line.cutoff == math.inf
    with pytest.raises(ConfigurationError):
        spectral_measure(Circle(1.0), TRACE, 0.0)


def test_observable_support():
    with pytest.raises(UnsupportedObservableError):
        Line().validate(TRACE)
    with pytest.raises(ConfigurationError):
        Circle(1.0).validate(Observable("diagonal", 2.0))
    with pytest.raises(ConfigurationError):
        Interval(1.0).validate(Observable("diagonal", 0.0))
    with pytest.raises(ConfigurationError):
        HalfLine("robin")
    with pytest.raises(UnsupportedObservableError):
        Circle(1.0).expected_coeffs(Observable("diagonal", 0.0, 0.5), "heat", 2)
    with pytest.raises(UnsupportedObservableError):
        Interval(1.0).expected_coeffs(Observable("diagonal", 0.5), "heat", 2)


def test_line_tables():
    diagonal = Observable("diagonal", 0.0)
    assert expected_coeffs(Line(), diagonal, "lambda", 3).a == (pi_power(-2), ZERO, ZERO, ZERO)
    assert Line().expected_coeffs(diagonal, "lambdaDiag", 1).a[0] == pi_power(-2)
    off = Observable("diagonal", 0.0, 1.0)
    assert all(value.is_zero() for value in Line().expected_coeffs(off, "heat", 4).coefficients)
    omega = Line().expected_coeffs(off, "omega", 4)
    cylinder = Line().expected_coeffs(off, "cylinder", 4)
    assert omega.c[2] == pi_power(-2, 2)
    assert omega.c[4] == pi_power(-2, -24)
    for s in range(5):
        assert omega.c[s] == math.factorial(s) * cylinder.coefficients[s]
    with pytest.raises(ConfigurationError):
        Line().expected_coeffs(diagonal, "sigma", 2)


def test_half_line_tables():
    dirichlet = HalfLine("dirichlet").expected_coeffs(Observable("diagonal", 1.0), "omega", 4)
    assert dirichlet.c == (pi_power(-2), ZERO, pi_power(-2, Fraction(-1, 2)), ZERO, pi_power(-2, Fraction(3, 2)))
    neumann = HalfLine("neumann").expected_coeffs(Observable("diagonal", 1.0), "cylinder", 2)
    assert neumann.coefficients[2] == pi_power(-2, Fraction(1, 4))


def test_interval_trace_tables():
    interval = Interval(1.0)
    assert interval.expected_coeffs(TRACE, "lambda", 2).a[1] == Fraction(-1, 2)
    assert interval.expected_coeffs(TRACE, "heat", 2).coefficients[1] == Fraction(-1, 2)
    assert interval.expected_coeffs(TRACE, "omega", 2).c[1] == Fraction(-1, 2)
    cylinder = interval.expected_coeffs(TRACE, "cylinder", 4)
    assert cylinder.coefficients[1] == Fraction(-1, 2)
    assert cylinder.coefficients[0] == pi_power(-2)
    assert cylinder.coefficients[2] == pi_power(2, Fraction(1, 12))


def test_circle_cylinder_closed_form():
    circle = Circle(1.0)
    for t in np.linspace(0.1, 1.0, 10):
        for delta in (0.0, 0.3, 1.0):
            assert circle.cylinder_kernel(t, delta) == pytest.approx(circle.cylinder_fourier_sum(t, delta),
                                                                     rel=1e-12)


def test_heat_kernel_branches_agree():
    circle = Circle(1.0)
    switch = 1.0 / math.pi
    for t in (0.9 * switch, 1.1 * switch):
        modes = sum(math.cos(k * math.pi * 0.4) * math.exp(-(k * math.pi) ** 2 * t) for k in range(1, 60))
        assert circle.heat_kernel(t, 0.4) == pytest.approx((1.0 + 2.0 * modes) / 2, rel=1e-12)
        trace = sum(math.exp(-(k * math.pi) ** 2 * t) for k in range(1, 60))
        assert circle.trace_kernel("heat", t) == pytest.approx(1.0 + 2.0 * trace, rel=1e-12)


def test_interval_trace_cylinder_closed_form():
    interval = Interval(2.0)
    for t in (0.05, 0.5, 2.0):
        assert interval.trace_kernel("cylinder", t) == pytest.approx(1.0 / math.expm1(math.pi * t / 2.0), rel=1e-12)


def test_interval_kernel_is_the_image_difference():
    interval = Interval(1.0)
    x, y, t = 0.3, 0.55, 0.01
    n = np.arange(1, 400)
    omega = n * math.pi
    modes = float(np.sum(2.0 * np.sin(omega * x) * np.sin(omega * y) * np.exp(-omega ** 2 * t)))
    assert interval.kernel("heat", t, x, y) == pytest.approx(modes, rel=1e-10)


def test_half_line_images():
    dirichlet = HalfLine("dirichlet")
    assert dirichlet.kernel("cylinder", 0.2, 1.0, 1.5) == pytest.approx(
        line_kernel("cylinder", 0.2, -0.5) - line_kernel("cylinder", 0.2, 2.5))


def test_euler_maclaurin_predictions():
    circle = Circle(1.0)
    second = euler_maclaurin_prediction(circle, 2)
    assert second.c == pi_power(2, Fraction(1, 6))
    assert second.e == pi_power(2, Fraction(1, 12))
    assert euler_maclaurin_prediction(circle, 3).c == ZERO
    assert euler_maclaurin_prediction(circle, 3).e == ZERO
    assert euler_maclaurin_prediction(circle, 4).c == pi_power(6, Fraction(-1, 30))
    assert euler_maclaurin_prediction(circle, 4).e == pi_power(6, Fraction(-1, 720))
    diagonal = Observable("diagonal", 0.0)
    expected = circle.expected_coeffs(diagonal, "omega", 6)
    cylinder = circle.expected_coeffs(diagonal, "cylinder", 6)
    for s in range(2, 7):
        prediction = euler_maclaurin_prediction(circle, s)
        assert prediction.s == s
        assert prediction.c == expected.c[s]
        assert prediction.e == cylinder.coefficients[s]
        assert prediction.c == prediction.e * math.factorial(s)
    assert euler_maclaurin_prediction(Circle(2.0), 2).c == pi_power(2, Fraction(1, 24))
    assert euler_maclaurin_prediction(Circle(2.0), 2).e == pi_power(2, Fraction(1, 48))
    with pytest.raises(ConfigurationError):
        euler_maclaurin_prediction(circle, 1)
    with pytest.raises(ConfigurationError):
        euler_maclaurin_prediction(Line(), 2)


def test_trapezoid_defect():
    assert trapezoid_defect(Interval(1.0)) == Fraction(-1, 2)
    assert trapezoid_defect(Circle(1.0)) == ZERO
    assert trapezoid_defect(Interval(3.0)) == Interval(3.0).expected_coeffs(TRACE, "omega", 1).c[1]
    with pytest.raises(UnsupportedObservableError):
        trapezoid_defect(Line())


@pytest.mark.parametrize("s", [1, 3])
def test_offdiagonal_means_decay(s):
    report = offdiagonal_decay_check(Line(), s, 0.0, 1.0)
    assert report.passed
    assert report.exponent < -0.4 * s


def test_decay_check_needs_a_long_grid():
    with pytest.raises(ConfigurationError):
        offdiagonal_decay_check(Line(), 1, 0.0, 1.0, grid=np.geomspace(400.0, 4.0e4, 20))
    with pytest.raises(ConfigurationError):
        offdiagonal_decay_check(Line(), 1, 0.0, 0.0)


def test_circle_cylinder_expansion():
    comparison = compare_kernel_expansion(Circle(1.0), Observable("diagonal", 0.0), "cylinder", 6, logs=False)
    coefficients = comparison.estimate.coefficients
    assert coefficients[0] == pytest.approx(1 / math.pi, rel=1e-3)
    assert coefficients[2] == pytest.approx(math.pi / 12, rel=1e-3)
    assert coefficients[4] == pytest.approx(-math.pi ** 3 / 720, rel=1e-3)
    assert [row.name for row in comparison.rows if row.compared] == ["e_0", "e_2", "e_4"]
    assert comparison.passed


def test_line_means():
    comparison = compare_means(Line(), Observable("diagonal", 0.0), 2, "lambda", window=(100.0, 2000.0),
                               smax=1, points=24)
    assert comparison.rows[0].compared
    assert comparison.passed


def test_manifolds_from_params():
    circle = Manifold.from_params(Params({"type": "circle", "L": 2.0}))
    assert isinstance(circle, Circle) and circle.L == 2.0
    half_line = Manifold.from_params(Params({"type": "half_line", "bc": "neumann"}))
    assert half_line.describe() == "HalfLine(neumann)"


MODEL_CASES = [
    (Line(), Observable("diagonal", 0.0)),
    (Line(), Observable("diagonal", 0.0, 1.0)),
    (HalfLine("dirichlet"), Observable("diagonal", 1.0)),
    (HalfLine("neumann"), Observable("diagonal", 0.5)),
    (HalfLine("dirichlet"), Observable("diagonal", 0.5, 1.5)),
    (Circle(1.0), Observable("diagonal", 0.0)),
    (Circle(2.0), Observable("diagonal", 0.5)),
    (Circle(2.0), TRACE),
    (Interval(1.0), TRACE),
    (Interval(3.0), TRACE),
]


@pytest.mark.parametrize("manifold, observable", MODEL_CASES)
def test_lambda_tables_map_onto_omega_tables(manifold, observable):
    smax = 8
    lam = manifold.expected_coeffs(observable, "lambda", smax)
    omega = manifold.expected_coeffs(observable, "omega", smax)
    predicted = omega_diag_from_lambda_diag(lam)
    for s in range(smax + 1):
        if odd_positive(1, s):
            assert predicted.c[s] is UNDETERMINED
            assert predicted.d[s] == omega.d[s], s
        else:
            assert predicted.c[s] == omega.c[s], s
    assert lambda_diag_from_omega_diag(omega) == lam
    assert heat_from_lambda_diag(lam) == manifold.expected_coeffs(observable, "heat", smax)
