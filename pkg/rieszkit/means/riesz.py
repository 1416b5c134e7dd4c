"""
Riesz means and Riesz integrals of spectral measures,

    R^alpha mu(x) = int_{sigma < x} (1 - sigma/x)^alpha d mu(sigma),
    d^{-alpha} mu(x) = (1/alpha!) int_{sigma < x} (x - sigma)^alpha d mu(sigma),

together with numerical residuals of the two formulas relating means in lambda to
means in a power of lambda, and the mean of a Stieltjes integral f = int a d mu
written through the means of mu.

Atoms exactly at the argument never contribute: measures are continuous from the
left. For alpha >= 1 the factor vanishes there anyway; for alpha = 0 it is the
difference between mu(x-) and mu(x).
"""
import logging
import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from rieszkit.checks import ConfigurationError, TruncationError
from rieszkit.coefficients.transforms import hardy_kernel_coeffs, hormander_weights
from rieszkit.means.fitting import MeanSamples
from rieszkit.means.measure import SpectralMeasure, change_variable, integrate_checked
from rieszkit.means.weights import KernelWeight

logger = logging.getLogger(__name__)


def _check_order(alpha: int, minimum: int = 0):
    if int(alpha) != alpha or alpha < minimum:
        raise ConfigurationError("Riesz order must be an integer >= %d, got %r" % (minimum, alpha))


def _check_argument(x: float):
    if not x > 0:
        raise ConfigurationError("Riesz means are taken at positive arguments, got %r" % x)


def power_mean(measure: SpectralMeasure, alpha: int, tau: float, k: float, epsabs: float = 1e-13,
               epsrel: float = 1e-12) -> float:
    """R^alpha at tau in the variable lambda^(1/k), for a measure given in lambda."""
    if tau <= 0:
        return 0.0
    root = 1.0 / k
    return measure.integrate(lambda sigma: (1.0 - np.power(sigma, root) / tau) ** alpha, tau ** k, epsabs, epsrel)


def riesz_mean(measure: SpectralMeasure, alpha: int, x: float, epsabs: float = 1e-13,
               epsrel: float = 1e-12) -> float:
    _check_order(alpha)
    _check_argument(x)
    measure.check_range(x)
    return measure.integrate(lambda sigma: (1.0 - sigma / x) ** alpha, x, epsabs, epsrel)


def riesz_integral(measure: SpectralMeasure, alpha: int, x: float, epsabs: float = 1e-13,
                   epsrel: float = 1e-12) -> float:
    """Single-integral form of the alpha-fold iterated integral of mu."""
    _check_order(alpha, 1)
    _check_argument(x)
    measure.check_range(x)
    factorial = math.factorial(alpha)
    return measure.integrate(lambda sigma: (x - sigma) ** alpha / factorial, x, epsabs, epsrel)


def _breakpoints(measure: SpectralMeasure, lower: float, upper: float) -> List[float]:
    inner = measure.positions[(measure.positions > lower) & (measure.positions < upper)]
    return [lower] + inner.tolist() + [upper]


def _piecewise(func, edges: Sequence[float], epsabs: float, epsrel: float) -> float:
    total = 0.0
    for lower, upper in zip(edges[:-1], edges[1:]):
        if upper > lower:
            total += integrate_checked(func, lower, upper, epsabs, epsrel)[0]
    return total


def iterated_riesz_integral(measure: SpectralMeasure, alpha: int, x: float, epsabs: float = 1e-13,
                            epsrel: float = 1e-12) -> float:
    """
    The iterated integral int_0^x dx_1 ... int_0^{x_{alpha-1}} mu(sigma) d sigma by
    nested quadrature. Slow; meant as a cross-check of ``riesz_integral`` for small alpha.
    """
    _check_order(alpha)
    _check_argument(x)
    if alpha == 0:
        return riesz_mean(measure, 0, x, epsabs, epsrel)

    def inner(y):
        return iterated_riesz_integral(measure, alpha - 1, y, epsabs, epsrel) if y > 0 else 0.0

    return _piecewise(inner, _breakpoints(measure, 0.0, x), epsabs, epsrel)


def mean_samples(measure: SpectralMeasure, alpha: int, points: Iterable[float], progress: bool = False,
                 epsabs: float = 1e-13, epsrel: float = 1e-12) -> MeanSamples:
    points = np.asarray(list(points), dtype=float)
    values = [riesz_mean(measure, alpha, x, epsabs, epsrel)
              for x in tqdm(points, desc="R^%d means" % alpha, disable=not progress)]
    return MeanSamples(alpha, points, np.asarray(values), measure.variable)


def _in_lambda(measure: SpectralMeasure, x: float) -> SpectralMeasure:
    measure = change_variable(measure, "lambda")
    measure.check_range(x)
    return measure


def hardy_identity_residual(measure: SpectralMeasure, k, alpha: int, x: float, epsabs: float = 1e-14,
                            epsrel: float = 1e-13) -> float:
    """
    R^alpha f(x) - [k^alpha R^alpha_omega f(x^(1/k)) + int_0^x J_{k,alpha}(x, sigma) R^alpha_tau f d sigma]
    where omega = lambda^(1/k) and R^alpha_tau f is the omega-mean at tau = sigma^(1/k).
    Measures in omega are read in lambda first; densities are integrated numerically.
    """
    _check_order(alpha, 1)
    _check_argument(x)
    k = Fraction(k)
    if k <= 0 or k == 1:
        raise ConfigurationError("power k must be positive and different from 1, got %s" % k)
    measure = _in_lambda(measure, x)
    power, root = float(k), 1.0 / float(k)

    lhs = riesz_mean(measure, alpha, x, epsabs, epsrel)
    boundary = power ** alpha * power_mean(measure, alpha, x ** root, power, epsabs, epsrel)
    kernel = [(j, float(coefficient)) for j, coefficient in hardy_kernel_coeffs(k, alpha) if coefficient]

    def integrand(sigma):
        mean = power_mean(measure, alpha, sigma ** root, power, epsabs, epsrel)
        if mean == 0.0:
            return 0.0
        return mean * sum(coefficient * sigma ** j * x ** (-j - 1) for j, coefficient in kernel)

    integral = _piecewise(integrand, _breakpoints(measure, 0.0, x), epsabs, epsrel)
    return lhs - (boundary + integral)


def hormander_identity_residual(measure: SpectralMeasure, k: int, alpha: int, x: float, epsabs: float = 1e-14,
                                epsrel: float = 1e-13) -> float:
    """R^alpha f(x) - sum_beta b_beta R^beta_omega f(x^(1/k)) for integer k >= 2."""
    _check_order(alpha, 1)
    _check_argument(x)
    if int(k) != k or k < 2:
        raise ConfigurationError("the finite relation needs an integer power k >= 2, got %r" % k)
    measure = _in_lambda(measure, x)
    k = int(k)
    top = x ** (1.0 / k)
    rhs = sum(float(b) * power_mean(measure, beta, top, k, epsabs, epsrel)
              for beta, b in hormander_weights(k, alpha).items())
    return riesz_mean(measure, alpha, x, epsabs, epsrel) - rhs


def _stieltjes_factors(alpha: int) -> List[Tuple[int, float]]:
    return [(j, (-1) ** j * math.comb(alpha + 1, j) / math.factorial(j - 1)) for j in range(1, alpha + 2)]


def stieltjes_mean(weight: KernelWeight, measure: SpectralMeasure, alpha: int, x: float,
                   epsabs: float = 1e-13, epsrel: float = 1e-12) -> float:
    """
    R^alpha f(x) for f = int a d mu, using only the means R^alpha mu and derivatives of a:

        a(x) R^alpha mu(x) + x^{-alpha} sum_{j=1}^{alpha+1} (-1)^j C(alpha+1, j) / (j-1)!
            int_0^x (x - sigma)^{j-1} sigma^alpha a^{(j)}(sigma) R^alpha mu(sigma) d sigma.

    The caller asserts a^{(alpha)}(sigma) = o(sigma^{-alpha}) at the origin.
    """
    _check_order(alpha)
    _check_argument(x)
    measure.check_range(x)
    weight.check_order(alpha + 1)
    factors = _stieltjes_factors(alpha)

    def integrand(sigma):
        mean = riesz_mean(measure, alpha, sigma, epsabs, epsrel) if sigma > 0 else 0.0
        if mean == 0.0:
            return 0.0
        derivatives = sum(c * (x - sigma) ** (j - 1) * float(weight.derivative(j, sigma)) for j, c in factors)
        return sigma ** alpha * mean * derivatives

    head = float(weight(x)) * riesz_mean(measure, alpha, x, epsabs, epsrel)
    return head + x ** (-alpha) * _piecewise(integrand, _breakpoints(measure, 0.0, x), epsabs, epsrel)


def stieltjes_limit(weight: KernelWeight, measure: SpectralMeasure, alpha: int, epsabs: float = 1e-13,
                    epsrel: float = 1e-12) -> float:
    """
    The x -> infinity limit of ``stieltjes_mean`` for a weight decaying with all its
    derivatives: (-1)^{alpha+1}/alpha! int_0^inf sigma^alpha a^{(alpha+1)} R^alpha mu d sigma.
    """
    _check_order(alpha)
    if np.isfinite(measure.cutoff):
        raise TruncationError("the limit needs a complete measure, %s stops at %g"
                              % (measure.name or "this one", measure.cutoff))
    weight.check_order(alpha + 1)
    factor = (-1) ** (alpha + 1) / math.factorial(alpha)

    def integrand(sigma):
        mean = riesz_mean(measure, alpha, sigma, epsabs, epsrel) if sigma > 0 else 0.0
        if mean == 0.0:
            return 0.0
        return sigma ** alpha * float(weight.derivative(alpha + 1, sigma)) * mean

    edges = _breakpoints(measure, 0.0, np.inf)
    return factor * _piecewise(integrand, edges, epsabs, epsrel)
