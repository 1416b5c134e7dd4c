import logging
import math
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from overrides import overrides

from rieszkit.checks import ConfigurationError, UnsupportedObservableError
from rieszkit.exact_scalar import ExactScalar, ZERO, bernoulli, pi_power, rational
from rieszkit.manifolds.circle import Circle
from rieszkit.manifolds.manifold import Manifold, Observable, exact
from rieszkit.means.measure import Envelope, SpectralMeasure

logger = logging.getLogger(__name__)


@Manifold.register("interval")
class Interval(Manifold):
    """
    (0, L) with Dirichlet ends: eigenvalues omega_n = n pi / L for n >= 1 and
    eigenfunctions sqrt(2/L) sin(omega_n x). Kernels are the odd part of the kernels on
    the circle of the same L, K(x, y) = K_circle(x - y) - K_circle(x + y).
    """
    supports_trace = True

    def __init__(self, L: float = 1.0, bc: str = "dirichlet") -> None:
        if not L > 0:
            raise ConfigurationError("interval length L must be positive, got %r" % L)
        if bc != "dirichlet":
            raise ConfigurationError("only the dirichlet interval is modelled, got %r" % bc)
        self.L = L
        self.bc = bc
        self.circle = Circle(L)

    @property
    def spacing(self) -> float:
        return math.pi / self.L

    @overrides
    def describe(self) -> str:
        return "Interval(L=%g)" % self.L

    @overrides
    def check_point(self, x: float):
        if not 0 < x < self.L:
            raise ConfigurationError("points of the interval lie in (0, L), got %r for L=%g" % (x, self.L))

    @overrides
    def spectral_measure(self, observable: Observable, cutoff: float) -> SpectralMeasure:
        self.validate(observable)
        n = self.circle.ladder(cutoff)[1:]
        omega = n * self.spacing
        if observable.is_trace:
            weights, bound = np.ones(len(n)), 1.0
        else:
            weights = 2.0 / self.L * np.sin(omega * observable.x) * np.sin(omega * observable.second)
            bound = 2.0 / self.L
        return SpectralMeasure("omega", omega, weights, envelope=Envelope(cutoff, self.spacing, bound, "omega"),
                               name="%s %s" % (self.describe(), observable.describe()))

    @overrides
    def kernel(self, kind: str, t: float, x: float, y: float) -> float:
        self.check_point(x)
        self.check_point(y)
        return self.circle.kernel(kind, t, x - y, 0.0) - self.circle.kernel(kind, t, x + y, 0.0)

    @overrides
    def trace_kernel(self, kind: str, t: float) -> float:
        return (self.circle.trace_kernel(kind, t) - 1.0) / 2

    def _check_trace(self, observable: Observable):
        if not observable.is_trace:
            raise UnsupportedObservableError("expected coefficients on the interval cover the trace only")

    @overrides
    def heat_coefficients(self, observable: Observable, smax: int) -> List[ExactScalar]:
        self._check_trace(observable)
        out = [ZERO] * (smax + 1)
        out[0] = pi_power(-1, exact(self.L) / 2)
        if smax >= 1:
            out[1] = rational(Fraction(-1, 2))
        return out

    @overrides
    def cylinder_coefficients(self, observable: Observable, smax: int) -> Tuple[List[ExactScalar],
                                                                                List[ExactScalar]]:
        self._check_trace(observable)
        length = exact(self.L)
        e = [pi_power(2 * (s - 1), bernoulli(s) * length ** (1 - s) / math.factorial(s)) for s in range(smax + 1)]
        if smax >= 1:
            e[1] = rational(Fraction(-1, 2))
        return e, [ZERO] * (smax + 1)

    @overrides
    def ladder_weights(self, observable: Observable) -> Tuple[ExactScalar, ExactScalar]:
        self._check_trace(observable)
        return ZERO, rational(1)
