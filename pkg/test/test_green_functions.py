import math

import numpy as np
import pytest
from scipy import integrate, special

from rieszkit.checks import ConfigurationError, TruncationError
from rieszkit.green_functions import (KernelSamples, cylinder_trace, en_eval, expansion_basis, fit_kernel_expansion,
                                      heat_trace, kernel_samples, kernel_value, ladder_cutoff, model_kernel,
                                      tail_certificate, weight_derivs)
from rieszkit.manifolds import Circle, Interval, Observable, compare_kernel_expansion, spectral_measure
from rieszkit.manifolds.manifold import line_kernel
from rieszkit.means import Envelope, SpectralMeasure, atomic_measure, geometric_grid


def test_kernels_of_an_atomic_measure():
    measure = atomic_measure("lambda", [(1.0, 1.0), (4.0, 0.5)])
    value, bound = kernel_value(measure, "heat", 0.5)
    assert value == pytest.approx(math.exp(-0.5) + 0.5 * math.exp(-2.0))
    assert bound == 0.0
    assert kernel_value(measure, "cylinder", 0.5)[0] == pytest.approx(math.exp(-0.5) + 0.5 * math.exp(-1.0))


def test_traces_in_either_variable():
    single = atomic_measure("omega", [(1.0, 1.0)])
    for t in (0.1, 1.0, 3.0):
        assert cylinder_trace(single, t) == pytest.approx(math.exp(-t), rel=1e-14)
        assert heat_trace(single, t) == pytest.approx(math.exp(-t), rel=1e-14)
    ladder = atomic_measure("lambda", [(4.0, 2.0)])
    assert cylinder_trace(ladder, 0.3) == pytest.approx(2 * math.exp(-0.6), rel=1e-14)
    assert heat_trace(ladder, 0.3) == pytest.approx(2 * math.exp(-1.2), rel=1e-14)
    with pytest.raises(ConfigurationError):
        kernel_value(measure, "wave", 0.5)
    with pytest.raises(ConfigurationError):
        heat_trace(measure, 0.0)


def test_truncated_ladders_are_certified():
    positions = np.arange(1, 11) * math.pi
    measure = SpectralMeasure("omega", positions, np.ones(10), envelope=Envelope(10 * math.pi, math.pi, 1.0))
    kernel_value(measure, "heat", 1.0, tol=1e-12)
    with pytest.raises(TruncationError):
        kernel_value(measure, "heat", 1e-4, tol=1e-12)


@pytest.mark.parametrize("kind, tmin", [("heat", 1e-3), ("cylinder", 5e-3)])
def test_ladder_cutoff_meets_its_certificate(kind, tmin):
    cutoff = ladder_cutoff(kind, tmin, 1e-14, math.pi, 2.0)
    envelope = Envelope(cutoff, math.pi, 2.0)
    assert tail_certificate(envelope, kind, tmin) <= 1e-14
    assert tail_certificate(envelope, kind, 10 * tmin) <= 1e-14
    assert tail_certificate(Envelope(0.9 * cutoff, math.pi, 2.0), kind, tmin) > 1e-14


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_exponential_integrals(n):
    for t in (0.01, 0.3, 1.0, 2.5):
        assert en_eval(n, t) == pytest.approx(float(special.expn(n, t)), rel=1e-10)
    with pytest.raises(ConfigurationError):
        en_eval(n, 0.0)


def test_exponential_integral_orders():
    assert en_eval(1, 0.2) == pytest.approx(float(special.exp1(0.2)), rel=1e-12)
    with pytest.raises(ConfigurationError):
        en_eval(0, 1.0)


def test_weight_derivatives():
    assert weight_derivs("gaussian", 1, 0.5, 2.0) == pytest.approx(-2 * math.exp(-2))
    assert weight_derivs("sqrtExp", 1, 1.0, 4.0) == pytest.approx(-math.exp(-2) / 4)
    # second derivative of e^{-t sqrt(lambda)}: (t^2 / (4 lambda) + t / (4 lambda^{3/2})) e^{-t sqrt(lambda)}
    assert weight_derivs("sqrtExp", 2, 1.0, 4.0) == pytest.approx((1 / 16 + 1 / 32) * math.exp(-2))
    with pytest.raises(ConfigurationError):
        weight_derivs("lorentzian", 1, 1.0, 1.0)
    with pytest.raises(ConfigurationError):
        weight_derivs("gaussian", 0, 1.0, 1.0)


def test_kernel_samples_validation():
    with pytest.raises(ConfigurationError):
        KernelSamples("heat", np.array([0.2, 0.1]), np.array([1.0, 2.0]))
    with pytest.raises(ConfigurationError):
        KernelSamples("heat", np.array([0.1, 0.2]), np.array([1.0]))
    with pytest.raises(ConfigurationError):
        KernelSamples("wave", np.array([0.1]), np.array([1.0]))


def test_expansion_bases():
    spec, slots = expansion_basis("cylinder", 1, 4, (0.01, 0.1))
    assert slots == [(0, False), (1, False), (2, False), (2, True), (3, False), (4, False), (4, True)]
    spec, slots = expansion_basis("cylinder", 1, 4, (0.01, 0.1), logs=False)
    assert spec.size == 5
    spec, _ = expansion_basis("heat", 1, 2, (0.01, 0.1))
    assert [float(p) for p in spec.exponents] == [-0.5, 0.0, 0.5]


def test_model_kernel_dispatch():
    circle = Circle(1.0)
    assert model_kernel(circle, "cylinder", 0.3) == pytest.approx(circle.trace_kernel("cylinder", 0.3))
    assert model_kernel(circle, "heat", 0.3, 0.2) == pytest.approx(circle.kernel("heat", 0.3, 0.2, 0.2))


def test_interval_trace_heat_expansion():
    interval = Interval(1.0)
    comparison = compare_kernel_expansion(interval, Observable("trace"), "heat", 4)
    assert comparison.estimate.coefficients[0] == pytest.approx(0.5 / math.sqrt(math.pi), rel=1e-8)
    assert comparison.estimate.coefficients[1] == pytest.approx(-0.5, abs=1e-6)
    assert comparison.closed_form_error < 1e-10
    assert comparison.passed


def test_fit_of_a_synthetic_cylinder_kernel():
    times = geometric_grid(0.005, 0.1, 64)
    values = 1 / (math.pi * times) + math.pi / 12 * times
    estimate = fit_kernel_expansion(KernelSamples("cylinder", times, values), 1, 3, logs=False)
    np.testing.assert_allclose(estimate.coefficients, [1 / math.pi, 0.0, math.pi / 12, 0.0], atol=1e-8)
    assert estimate.to_dict()["coefficients"]["e_2"]["estimate"] == pytest.approx(math.pi / 12)


def test_weight_derivatives_match_finite_differences():
    rng = np.random.RandomState(8446)
    weights = {"gaussian": lambda t, point: math.exp(-point * point * t),
               "sqrtExp": lambda t, point: math.exp(-t * math.sqrt(point))}
    for _ in range(20):
        t, point = rng.uniform(0.2, 2.0), rng.uniform(0.5, 4.0)
        h = 1e-5 * point
        for kind, weight in weights.items():
            difference = (weight(t, point + h) - weight(t, point - h)) / (2 * h)
            assert weight_derivs(kind, 1, t, point) == pytest.approx(difference, rel=1e-6, abs=1e-7)
            for j in range(2, 5):
                difference = (weight_derivs(kind, j - 1, t, point + h)
                              - weight_derivs(kind, j - 1, t, point - h)) / (2 * h)
                assert weight_derivs(kind, j, t, point) == pytest.approx(difference, rel=1e-6, abs=1e-6)


def test_exponential_integral_recurrence():
    # n E_{n+1}(t) = e^{-t} - t E_n(t), across the series and quadrature branches
    rng = np.random.RandomState(29)
    for t in np.concatenate([rng.uniform(0.02, 1.0, 8), rng.uniform(1.0, 4.0, 8)]):
        for n in range(1, 6):
            assert n * en_eval(n + 1, t) == pytest.approx(math.exp(-t) - t * en_eval(n, t), rel=1e-8, abs=1e-12)


def test_large_circles_approach_the_line():
    for L in (50.0, 1000.0):
        circle = Circle(L)
        for t in (0.1, 0.5, 2.0):
            for delta in (0.0, 0.3, 1.0):
                assert circle.kernel("heat", t, delta, 0.0) == pytest.approx(line_kernel("heat", t, delta), rel=1e-12)
    wide = Circle(1000.0)
    for t in (0.1, 0.5):
        assert wide.kernel("cylinder", t, 0.3, 0.0) == pytest.approx(line_kernel("cylinder", t, 0.3), rel=1e-5)


@pytest.mark.parametrize("t, s", [(0.05, 0.1), (0.2, 0.3), (0.5, 0.7)])
def test_heat_kernel_semigroup_on_the_circle(t, s):
    circle = Circle(1.0)
    x, y = 0.3, -0.45
    composed = integrate.quad(lambda z: circle.heat_kernel(t, x - z) * circle.heat_kernel(s, z - y), -1.0, 1.0,
                              epsabs=1e-14, epsrel=1e-12, limit=200)[0]
    assert composed == pytest.approx(circle.heat_kernel(t + s, x - y), rel=1e-10)


def test_interval_trace_cylinder_spectral_sum():
    measure = spectral_measure(Interval(1.0), Observable("trace"), 400.0)
    for t in (0.1, 0.3, 1.0, 2.0):
        closed = 0.5 * math.sinh(math.pi * t) / (math.cosh(math.pi * t) - 1.0) - 0.5
        assert cylinder_trace(measure, t) == pytest.approx(closed, rel=1e-12)
        assert Interval(1.0).trace_kernel("cylinder", t) == pytest.approx(closed, rel=1e-12)
