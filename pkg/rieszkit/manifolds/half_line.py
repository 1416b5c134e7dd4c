import logging
import math
from fractions import Fraction
from typing import List, Tuple

from overrides import overrides

from rieszkit.checks import ConfigurationError
from rieszkit.exact_scalar import ExactScalar, ZERO, pi_power
from rieszkit.manifolds.manifold import Manifold, Observable, exact, line_kernel, reciprocal_power_series
from rieszkit.means.measure import SpectralMeasure, constant_density

logger = logging.getLogger(__name__)

BOUNDARY_SIGNS = {"dirichlet": -1, "neumann": 1}


@Manifold.register("half_line")
class HalfLine(Manifold):
    """
    (0, inf) with a Dirichlet or Neumann condition at 0. Kernels follow from the line
    by images, K(x, y) = K_line(x - y) -/+ K_line(x + y).
    """

    def __init__(self, bc: str = "dirichlet") -> None:
        if bc not in BOUNDARY_SIGNS:
            raise ConfigurationError("half line boundary condition must be dirichlet or neumann, got %r" % bc)
        self.bc = bc
        self.sign = BOUNDARY_SIGNS[bc]

    @overrides
    def describe(self) -> str:
        return "HalfLine(%s)" % self.bc

    @overrides
    def check_point(self, x: float):
        if not x > 0:
            raise ConfigurationError("points of the half line must be positive, got %r" % x)

    @overrides
    def spectral_measure(self, observable: Observable, cutoff: float = None) -> SpectralMeasure:
        self.validate(observable)
        x, y = observable.x, observable.second
        direct = constant_density(1.0 / math.pi, "omega", frequency=abs(x - y), name="direct")
        image = constant_density(self.sign / math.pi, "omega", frequency=x + y, name="image")
        return SpectralMeasure("omega", densities=(direct, image),
                               name="%s %s" % (self.describe(), observable.describe()))

    @overrides
    def kernel(self, kind: str, t: float, x: float, y: float) -> float:
        self.check_point(x)
        self.check_point(y)
        return line_kernel(kind, t, x - y) + self.sign * line_kernel(kind, t, x + y)

    @overrides
    def heat_coefficients(self, observable: Observable, smax: int) -> List[ExactScalar]:
        # the image term is exponentially small in t
        out = [ZERO] * (smax + 1)
        if not observable.off_diagonal:
            out[0] = pi_power(-1, Fraction(1, 2))
        return out

    @overrides
    def cylinder_coefficients(self, observable: Observable, smax: int) -> Tuple[List[ExactScalar],
                                                                                List[ExactScalar]]:
        x, y = exact(observable.x), exact(observable.second)
        image = reciprocal_power_series(x + y, smax, self.sign)
        if observable.off_diagonal:
            direct = reciprocal_power_series(x - y, smax)
        else:
            direct = [ZERO] * (smax + 1)
            direct[0] = pi_power(-2)
        return [a + b for a, b in zip(direct, image)], [ZERO] * (smax + 1)
