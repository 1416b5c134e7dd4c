import logging
from typing import List

import numpy as np
from allennlp.common import Registrable
from numpy.polynomial import Polynomial
from overrides import overrides

from rieszkit.checks import ConfigurationError
from rieszkit.coefficients.pipelines import gaussian_derivative_table, sqrt_exp_derivative_table

logger = logging.getLogger(__name__)


class KernelWeight(Registrable):
    """
    A smooth weight a(sigma) integrated against a spectral measure, f = int a d mu,
    together with its derivatives in sigma. ``max_order`` caps the derivatives a
    weight can supply; ``None`` means all of them.
    """
    default_implementation = "exponential"
    max_order = None

    def __call__(self, sigma):
        return self.derivative(0, sigma)

    def derivative(self, order: int, sigma):
        raise NotImplementedError

    def check_order(self, order: int):
        if order < 0:
            raise ConfigurationError("derivative order must be nonnegative, got %d" % order)
        if self.max_order is not None and order > self.max_order:
            raise ConfigurationError("%s supplies derivatives up to order %d, order %d requested"
                                     % (type(self).__name__, self.max_order, order))


@KernelWeight.register("exponential")
class ExponentialWeight(KernelWeight):
    """e^{-t sigma}: the heat weight in lambda, the cylinder weight in omega."""

    def __init__(self, t: float) -> None:
        if t <= 0:
            raise ConfigurationError("t must be positive, got %g" % t)
        self.t = t

    @overrides
    def derivative(self, order: int, sigma):
        self.check_order(order)
        return (-self.t) ** order * np.exp(-self.t * np.asarray(sigma, dtype=float))


@KernelWeight.register("gaussian")
class GaussianWeight(KernelWeight):
    """e^{-t omega^2}, the heat weight in omega."""

    def __init__(self, t: float) -> None:
        if t <= 0:
            raise ConfigurationError("t must be positive, got %g" % t)
        self.t = t

    @overrides
    def derivative(self, order: int, sigma):
        self.check_order(order)
        omega = np.asarray(sigma, dtype=float)
        total = np.zeros_like(omega)
        for (omega_power, t_power), z in gaussian_derivative_table(order).items():
            total = total + float(z) * omega ** omega_power * self.t ** t_power
        return total * np.exp(-self.t * omega ** 2)


@KernelWeight.register("sqrt_exponential")
class SqrtExponentialWeight(KernelWeight):
    """e^{-t sqrt(lambda)}, the cylinder weight in lambda. Derivatives need lambda > 0."""

    def __init__(self, t: float) -> None:
        if t <= 0:
            raise ConfigurationError("t must be positive, got %g" % t)
        self.t = t

    @overrides
    def derivative(self, order: int, sigma):
        self.check_order(order)
        lam = np.asarray(sigma, dtype=float)
        if order == 0:
            return np.exp(-self.t * np.sqrt(lam))
        if np.any(lam <= 0):
            raise ConfigurationError("derivatives of e^{-t sqrt(lambda)} need lambda > 0")
        total = np.zeros_like(lam)
        for i, y_i in sqrt_exp_derivative_table(order).items():
            total = total + float(y_i) * self.t ** i * lam ** (-order + i / 2)
        return total * np.exp(-self.t * np.sqrt(lam))


@KernelWeight.register("polynomial")
class PolynomialWeight(KernelWeight):
    """sum_i coefficients[i] sigma^i"""

    def __init__(self, coefficients: List[float], max_order: int = None) -> None:
        if not coefficients:
            raise ConfigurationError("polynomial weight needs at least one coefficient")
        self.polynomial = Polynomial(coefficients)
        self.max_order = max_order

    @overrides
    def derivative(self, order: int, sigma):
        self.check_order(order)
        return self.polynomial.deriv(order)(np.asarray(sigma, dtype=float))


def weight_from_name(name: str, **kwargs) -> KernelWeight:
    return KernelWeight.by_name(name)(**kwargs)
