"""
Base class of the one-dimensional model manifolds for H = -d^2/dx^2 and the
observables taken on them: the spectral function at a pair of points, or the
trace.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from allennlp.common import Registrable

from rieszkit.checks import ConfigurationError, UnsupportedObservableError
from rieszkit.coefficients.transforms import lambda_diag_from_heat, omega_diag_from_cylinder
from rieszkit.coefficients.types import KernelExpansion
from rieszkit.exact_scalar import ExactScalar, ZERO, pi_power
from rieszkit.means.measure import SpectralMeasure

logger = logging.getLogger(__name__)

TABLES = ("lambda", "omega", "heat", "cylinder")
TABLE_ALIASES = {"lambdaDiag": "lambda", "omegaDiag": "omega", "lambda-diag": "lambda", "omega-diag": "omega"}


def exact(value) -> Fraction:
    """Decimal inputs such as 0.3 are read as the rational they denote, not their binary double."""
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value))


@dataclass(frozen=True)
class Observable:
    """``diagonal`` at x (or at the pair x, y) or the ``trace``."""
    kind: str = "diagonal"
    x: Optional[float] = None
    y: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("diagonal", "trace"):
            raise ConfigurationError("observable must be diagonal or trace, got %r" % self.kind)
        if self.kind == "diagonal" and self.x is None:
            raise ConfigurationError("a diagonal observable needs a point x")

    @property
    def is_trace(self) -> bool:
        return self.kind == "trace"

    @property
    def second(self) -> float:
        return self.x if self.y is None else self.y

    @property
    def off_diagonal(self) -> bool:
        return not self.is_trace and self.y is not None and exact(self.y) != exact(self.x)

    def describe(self) -> str:
        if self.is_trace:
            return "trace"
        if self.off_diagonal:
            return "E(%g, %g)" % (self.x, self.y)
        return "E(%g, %g)" % (self.x, self.x)


def gaussian_images(offset: float, period: float, t: float, tol: float = 1e-18) -> float:
    """sum_n e^{-(offset - n period)^2 / 4t}; images farther than the reach contribute below tol each."""
    reach = math.sqrt(4.0 * t * math.log(1.0 / tol))
    first = math.floor((offset - reach) / period) - 1
    last = math.ceil((offset + reach) / period) + 1
    n = np.arange(first, last + 1)
    return float(np.sum(np.exp(-np.square(offset - n * period) / (4.0 * t))))


def cosine_modes(offset: float, spacing: float, t: float, kind: str, tol: float = 1e-18) -> float:
    """sum_{k>=1} cos(k spacing offset) w_k with w_k = e^{-(k spacing)^2 t} or e^{-k spacing t}."""
    if kind == "heat":
        count = int(math.ceil(math.sqrt(math.log(1.0 / tol) / t) / spacing)) + 1
        k = np.arange(1, count + 1)
        weights = np.exp(-np.square(k * spacing) * t)
    else:
        count = int(math.ceil(math.log(1.0 / tol) / (spacing * t))) + 1
        k = np.arange(1, count + 1)
        weights = np.exp(-k * spacing * t)
    return float(np.sum(np.cos(k * spacing * offset) * weights))


def line_kernel(kind: str, t: float, delta: float) -> float:
    if kind == "heat":
        return math.exp(-delta * delta / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)
    return t / (math.pi * (delta * delta + t * t))


def reciprocal_power_series(delta: Fraction, smax: int, sign: int = 1) -> List[ExactScalar]:
    """
    Cylinder coefficients of t / (pi (delta^2 + t^2)) = sum_k (-1)^k t^{2k+1} / (pi delta^{2k+2}),
    slot s = 2k + 2 for m = 1.
    """
    out = [ZERO] * (smax + 1)
    for s in range(2, smax + 1, 2):
        k = (s - 2) // 2
        out[s] = pi_power(-2, sign * (-1) ** k / delta ** s)
    return out


class Manifold(Registrable):
    """
    A model manifold. Subclasses supply spectral measures in omega, closed-form
    kernels and the exact small-t coefficients; the tables in lambda and omega follow
    from those by the exact diagonal maps.
    """
    dimension = 1
    supports_trace = False

    def validate(self, observable: Observable):
        if observable.is_trace and not self.supports_trace:
            raise UnsupportedObservableError("%s has no trace" % self.describe())
        if not observable.is_trace:
            self.check_point(observable.x)
            self.check_point(observable.second)

    def check_point(self, x: float):
        pass

    def describe(self) -> str:
        return type(self).__name__

    def spectral_measure(self, observable: Observable, cutoff: float) -> SpectralMeasure:
        raise NotImplementedError

    def kernel(self, kind: str, t: float, x: float, y: float) -> float:
        raise NotImplementedError

    def trace_kernel(self, kind: str, t: float) -> float:
        raise UnsupportedObservableError("%s has no trace" % self.describe())

    def observable_kernel(self, kind: str, t: float, observable: Observable) -> float:
        self.validate(observable)
        if observable.is_trace:
            return self.trace_kernel(kind, t)
        return self.kernel(kind, t, observable.x, observable.second)

    def heat_coefficients(self, observable: Observable, smax: int) -> List[ExactScalar]:
        raise UnsupportedObservableError("no expected heat coefficients for %s on %s"
                                         % (observable.describe(), self.describe()))

    def cylinder_coefficients(self, observable: Observable, smax: int) -> Tuple[List[ExactScalar],
                                                                                List[ExactScalar]]:
        raise UnsupportedObservableError("no expected cylinder coefficients for %s on %s"
                                         % (observable.describe(), self.describe()))

    def ladder_weights(self, observable: Observable) -> Tuple[ExactScalar, ExactScalar]:
        """Weight of the zero mode and of each regular rung of an atomic trace."""
        raise UnsupportedObservableError("%s has no eigenvalue ladder" % self.describe())

    def expected_coeffs(self, observable: Observable, table: str, smax: int):
        """
        Exact coefficients: ``heat`` and ``cylinder`` give KernelExpansion, ``lambda`` gives
        DiagonalLambdaCoeffs and ``omega`` gives DiagonalOmegaCoeffs, s = 0..smax.
        """
        table = TABLE_ALIASES.get(table, table)
        if table not in TABLES:
            raise ConfigurationError("table must be one of %s, got %r" % (TABLES, table))
        if smax < 0:
            raise ConfigurationError("smax must be nonnegative")
        self.validate(observable)
        if table in ("heat", "lambda"):
            heat = KernelExpansion(self.dimension, "heat", tuple(self.heat_coefficients(observable, smax)))
            return heat if table == "heat" else lambda_diag_from_heat(heat)
        e, f = self.cylinder_coefficients(observable, smax)
        cylinder = KernelExpansion(self.dimension, "cylinder", tuple(e), tuple(f))
        return cylinder if table == "cylinder" else omega_diag_from_cylinder(cylinder)
