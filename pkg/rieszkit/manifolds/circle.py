import logging
import math
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from overrides import overrides

from rieszkit.checks import ConfigurationError, UnsupportedObservableError
from rieszkit.exact_scalar import ExactScalar, ZERO, bernoulli, pi_power, rational
from rieszkit.manifolds.manifold import Manifold, Observable, cosine_modes, exact, gaussian_images
from rieszkit.means.measure import Envelope, SpectralMeasure

logger = logging.getLogger(__name__)


@Manifold.register("circle")
class Circle(Manifold):
    """
    The circle x in (-L, L] with ends identified, circumference 2L. Eigenvalues
    omega_n = n pi / L, the nonzero ones twice degenerate.

    Heat kernels switch between the image sum and the Fourier sum at t = L^2 / pi;
    the cylinder kernel is summed in closed form,

        T(t, x, y) = (1 / 2L) sinh(pi t / L) / (cosh(pi t / L) - cos(pi (x - y) / L)).
    """
    supports_trace = True

    def __init__(self, L: float = 1.0) -> None:
        if not L > 0:
            raise ConfigurationError("circle half-length L must be positive, got %r" % L)
        self.L = L

    @property
    def spacing(self) -> float:
        return math.pi / self.L

    @overrides
    def describe(self) -> str:
        return "Circle(L=%g)" % self.L

    @overrides
    def check_point(self, x: float):
        if not -self.L <= x <= self.L:
            raise ConfigurationError("points of the circle lie in [-L, L], got %r for L=%g" % (x, self.L))

    def ladder(self, cutoff: float) -> np.ndarray:
        if not cutoff > 0:
            raise ConfigurationError("atom cutoff must be positive, got %r" % cutoff)
        return np.arange(0, int(math.floor(cutoff / self.spacing)) + 1)

    @overrides
    def spectral_measure(self, observable: Observable, cutoff: float) -> SpectralMeasure:
        self.validate(observable)
        n = self.ladder(cutoff)
        if observable.is_trace:
            weights = np.where(n == 0, 1.0, 2.0)
            bound = 2.0
        else:
            delta = observable.x - observable.second
            weights = np.where(n == 0, 0.5, np.cos(n * self.spacing * delta)) / self.L
            bound = 1.0 / self.L
        return SpectralMeasure("omega", n * self.spacing, weights,
                               envelope=Envelope(cutoff, self.spacing, bound, "omega"),
                               name="%s %s" % (self.describe(), observable.describe()))

    def heat_kernel(self, t: float, delta: float) -> float:
        if t < self.L ** 2 / math.pi:
            return gaussian_images(delta, 2 * self.L, t) / math.sqrt(4 * math.pi * t)
        return (1.0 + 2.0 * cosine_modes(delta, self.spacing, t, "heat")) / (2 * self.L)

    def cylinder_kernel(self, t: float, delta: float) -> float:
        a, b = self.spacing * t, self.spacing * delta
        # cosh a - cos b without cancellation near a = b = 0
        gap = 2.0 * math.sinh(a / 2) ** 2 + 2.0 * math.sin(b / 2) ** 2
        return math.sinh(a) / gap / (2 * self.L)

    def cylinder_fourier_sum(self, t: float, delta: float) -> float:
        return (1.0 + 2.0 * cosine_modes(delta, self.spacing, t, "cylinder")) / (2 * self.L)

    @overrides
    def kernel(self, kind: str, t: float, x: float, y: float) -> float:
        if kind == "heat":
            return self.heat_kernel(t, x - y)
        return self.cylinder_kernel(t, x - y)

    @overrides
    def trace_kernel(self, kind: str, t: float) -> float:
        if kind == "cylinder":
            return 1.0 / math.tanh(self.spacing * t / 2)
        if t < self.L ** 2 / math.pi:
            return 2 * self.L * gaussian_images(0.0, 2 * self.L, t) / math.sqrt(4 * math.pi * t)
        return 1.0 + 2.0 * cosine_modes(0.0, self.spacing, t, "heat")

    def _scale(self, observable: Observable) -> Fraction:
        if observable.off_diagonal:
            raise UnsupportedObservableError("expected coefficients on the circle cover E(x, x) and the trace")
        return 2 * exact(self.L) if observable.is_trace else Fraction(1)

    @overrides
    def heat_coefficients(self, observable: Observable, smax: int) -> List[ExactScalar]:
        out = [ZERO] * (smax + 1)
        out[0] = pi_power(-1, self._scale(observable) / 2)
        return out

    @overrides
    def cylinder_coefficients(self, observable: Observable, smax: int) -> Tuple[List[ExactScalar],
                                                                                List[ExactScalar]]:
        scale, length = self._scale(observable), exact(self.L)
        e = [pi_power(2 * (s - 1), scale * bernoulli(s) / (length ** s * math.factorial(s)))
             for s in range(smax + 1)]
        return e, [ZERO] * (smax + 1)

    @overrides
    def ladder_weights(self, observable: Observable) -> Tuple[ExactScalar, ExactScalar]:
        if not observable.is_trace:
            raise UnsupportedObservableError("the eigenvalue ladder is read off the trace")
        return rational(1), rational(2)
