import logging
import math
from fractions import Fraction
from typing import List, Tuple

from overrides import overrides

from rieszkit.exact_scalar import ExactScalar, ZERO, pi_power
from rieszkit.manifolds.manifold import Manifold, Observable, exact, line_kernel, reciprocal_power_series
from rieszkit.means.measure import SpectralMeasure, constant_density

logger = logging.getLogger(__name__)


@Manifold.register("line")
class Line(Manifold):
    """
    The whole line. E(x, y) has density cos(omega (x - y)) / pi in omega and the
    spectrum carries no atoms, so the measure is complete at any cutoff.
    """

    @overrides
    def spectral_measure(self, observable: Observable, cutoff: float = None) -> SpectralMeasure:
        self.validate(observable)
        delta = abs(observable.x - observable.second)
        density = constant_density(1.0 / math.pi, "omega", frequency=delta, name="line")
        return SpectralMeasure("omega", densities=(density,), name="line %s" % observable.describe())

    @overrides
    def kernel(self, kind: str, t: float, x: float, y: float) -> float:
        return line_kernel(kind, t, x - y)

    @overrides
    def heat_coefficients(self, observable: Observable, smax: int) -> List[ExactScalar]:
        out = [ZERO] * (smax + 1)
        if not observable.off_diagonal:
            out[0] = pi_power(-1, Fraction(1, 2))
        return out

    @overrides
    def cylinder_coefficients(self, observable: Observable, smax: int) -> Tuple[List[ExactScalar],
                                                                                List[ExactScalar]]:
        logs = [ZERO] * (smax + 1)
        if observable.off_diagonal:
            return reciprocal_power_series(exact(observable.x) - exact(observable.y), smax), logs
        out = [ZERO] * (smax + 1)
        out[0] = pi_power(-2)
        return out, logs
