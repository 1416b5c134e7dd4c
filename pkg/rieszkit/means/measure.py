"""
Spectral measures in the variable lambda or its square root omega.

A measure is a finite list of atoms plus any number of density parts. Each
density part lives in its own native variable and is integrated there, so an
oscillatory ``cos(nu omega)`` factor keeps its quadrature weight even when the
measure itself is tagged ``lambda``. Atomic ladders truncated at a cutoff carry
an ``Envelope`` that bounds what was dropped.
"""
import logging
import warnings
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from allennlp.common import Params
from scipy import integrate

from rieszkit.checks import ConfigurationError, QuadratureError, TruncationError

logger = logging.getLogger(__name__)

VARIABLES = ("lambda", "omega")

# a warning is only fatal when the error estimate misses the request by this factor
QUADRATURE_SLACK = 1e4


def other_variable(variable: str) -> str:
    check_variable(variable)
    return "omega" if variable == "lambda" else "lambda"


def check_variable(variable: str):
    if variable not in VARIABLES:
        raise ConfigurationError("spectral variable must be one of %s, got %r" % (VARIABLES, variable))


def to_variable(values, source: str, target: str):
    """Map spectral positions between lambda and omega = lambda^(1/2)."""
    if source == target:
        return values
    if source == "lambda":
        return np.sqrt(values)
    return np.square(values)


def integrate_checked(func: Callable[[float], float], lower: float, upper: float,
                      epsabs: float = 1e-13, epsrel: float = 1e-12, limit: int = 400, **kwargs) -> Tuple[float, float]:
    """
    ``scipy.integrate.quad`` with its warnings turned into diagnostics: a warning is
    logged, and raised as ``QuadratureError`` when the error estimate is far off.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, error = integrate.quad(func, lower, upper, epsabs=epsabs, epsrel=epsrel, limit=limit, **kwargs)
    if not np.isfinite(value):
        raise QuadratureError("quadrature on [%g, %g] returned %r" % (lower, upper, value))
    if caught:
        requested = max(epsabs, epsrel * abs(value))
        message = "quadrature on [%g, %g]: %s (value %.17g, error estimate %.3g)" \
                  % (lower, upper, caught[-1].message, value, error)
        if error > QUADRATURE_SLACK * requested:
            raise QuadratureError(message)
        logger.debug(message)
    return value, error


def geometric_pieces(lower: float, upper: float, ratio: float = 4.0) -> List[Tuple[float, float]]:
    """Split [lower, upper] into pieces of bounded ratio; an infinite upper end stays one piece."""
    if not np.isfinite(upper) or upper <= ratio * lower:
        return [(lower, upper)]
    edges = [lower]
    while edges[-1] * ratio < upper:
        edges.append(edges[-1] * ratio)
    edges.append(upper)
    return list(zip(edges[:-1], edges[1:]))


@dataclass(frozen=True)
class Density:
    """
    ``function(u) * u**origin_power * cos(frequency * u) du`` on u > 0, with u the
    native ``variable``. ``function`` must be smooth down to u = 0.
    """
    function: Callable[[Any], Any]
    variable: str = "omega"
    origin_power: float = 0.0
    frequency: float = 0.0
    split: float = 1.0
    name: str = ""

    def __post_init__(self):
        check_variable(self.variable)
        if self.origin_power <= -1:
            raise ConfigurationError("density is not integrable at the origin (power %g)" % self.origin_power)
        if self.split <= 0:
            raise ConfigurationError("split point must be positive")

    def native(self, u):
        u = np.asarray(u, dtype=float)
        value = self.function(u) * np.power(u, self.origin_power)
        if self.frequency:
            value = value * np.cos(self.frequency * u)
        return value

    def value(self, sigma, variable: Optional[str] = None):
        """Pointwise density with respect to ``d sigma`` in ``variable``, Jacobian included."""
        variable = variable or self.variable
        sigma = np.asarray(sigma, dtype=float)
        if variable == self.variable:
            return self.native(sigma)
        u = to_variable(sigma, variable, self.variable)
        # du/dsigma for u = sigma^(1/2) or u = sigma^2
        jacobian = 0.5 / u if self.variable == "omega" else 2 * sigma
        return self.native(u) * jacobian

    def scaled(self, factor: float) -> "Density":
        function = self.function
        return replace(self, function=lambda u: factor * function(u))

    def integrate(self, kernel: Callable[[float], float], upper: float, variable: str,
                  epsabs: float = 1e-13, epsrel: float = 1e-12) -> float:
        """int_{sigma < upper} kernel(sigma) d rho, with sigma and upper in ``variable``."""
        top = float(to_variable(upper, variable, self.variable)) if np.isfinite(upper) else np.inf
        if top <= 0:
            return 0.0

        def smooth(u):
            return kernel(float(to_variable(u, self.variable, variable))) * float(self.function(u))

        total = 0.0
        head = min(self.split, top)
        if self.origin_power:
            def near(u):
                return smooth(u) * np.cos(self.frequency * u) if self.frequency else smooth(u)
            total += integrate_checked(near, 0.0, head, epsabs, epsrel, weight="alg",
                                       wvar=(self.origin_power, 0.0))[0]
        else:
            total += integrate_checked(lambda u: float(self.native(u)) * kernel(
                float(to_variable(u, self.variable, variable))), 0.0, head, epsabs, epsrel)[0]
        if top <= self.split:
            return total

        def far(u):
            return smooth(u) * u ** self.origin_power

        for lower, higher in geometric_pieces(self.split, top):
            if self.frequency:
                total += integrate_checked(far, lower, higher, epsabs, epsrel, weight="cos", wvar=self.frequency)[0]
            else:
                total += integrate_checked(far, lower, higher, epsabs, epsrel)[0]
        return total


def constant_density(coefficient: float, variable: str = "omega", origin_power: float = 0.0,
                     frequency: float = 0.0, name: str = "") -> Density:
    return Density(lambda u: coefficient * np.ones_like(u), variable, origin_power, frequency, name=name)


@dataclass(frozen=True)
class Envelope:
    """
    Atoms beyond ``cutoff`` were dropped. They have ``|weight| <= weight_bound`` and
    their positions are at least ``spacing`` apart, all measured in ``variable``.
    """
    cutoff: float
    spacing: float
    weight_bound: float
    variable: str = "omega"

    def __post_init__(self):
        check_variable(self.variable)
        if self.cutoff <= 0 or self.spacing <= 0 or self.weight_bound < 0:
            raise ConfigurationError("envelope needs positive cutoff and spacing, nonnegative weight bound")

    def tail_bound(self, kernel: Callable[[float], float], tail: Optional[float] = None) -> float:
        """
        Bound on |sum of w kernel(sigma)| over dropped atoms for a kernel that is positive
        and decreasing in the envelope variable beyond the cutoff. ``tail`` is the
        integral of the kernel from the cutoff to infinity when known in closed form.
        """
        if tail is None:
            tail, _ = integrate_checked(kernel, self.cutoff, np.inf, epsabs=1e-300, epsrel=1e-6)
        return self.weight_bound * (kernel(self.cutoff) + tail / self.spacing)


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """
    mu(sigma) with mu(0) = 0: atoms at strictly increasing positions plus density
    parts. Without an envelope the atom list is complete.
    """
    variable: str
    positions: np.ndarray = field(default_factory=lambda: np.zeros(0))
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0))
    densities: Tuple[Density, ...] = ()
    envelope: Optional[Envelope] = None
    name: str = ""

    def __post_init__(self):
        check_variable(self.variable)
        positions = np.asarray(self.positions, dtype=float).reshape(-1)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if positions.shape != weights.shape:
            raise ConfigurationError("got %d atom positions and %d weights" % (len(positions), len(weights)))
        if not np.all(np.isfinite(positions)) or np.any(positions < 0):
            raise ConfigurationError("atom positions must be finite and nonnegative")
        if np.any(np.diff(positions) <= 0):
            raise ConfigurationError("atom positions must be strictly increasing")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "densities", tuple(self.densities))

    @property
    def atoms(self) -> List[Tuple[float, float]]:
        return list(zip(self.positions.tolist(), self.weights.tolist()))

    @property
    def is_atomic(self) -> bool:
        return not self.densities

    @property
    def cutoff(self) -> float:
        """Largest argument at which means are exact; infinite for complete measures."""
        if self.envelope is None:
            return np.inf
        return float(to_variable(self.envelope.cutoff, self.envelope.variable, self.variable))

    def check_range(self, x: float):
        if x > self.cutoff:
            raise TruncationError("argument %g lies beyond the atom cutoff %g of %s"
                                  % (x, self.cutoff, self.name or "the measure"))

    def scaled(self, factor: float) -> "SpectralMeasure":
        envelope = self.envelope
        if envelope is not None:
            envelope = replace(envelope, weight_bound=abs(factor) * envelope.weight_bound)
        return replace(self, weights=factor * self.weights,
                       densities=tuple(density.scaled(factor) for density in self.densities), envelope=envelope)

    def atomic_sum(self, kernel: Callable[[np.ndarray], np.ndarray], upper: float = np.inf) -> float:
        """Sum of w kernel(sigma) over atoms with sigma < upper (strict, left-continuous)."""
        below = self.positions < upper
        if not np.any(below):
            return 0.0
        return float(np.sum(self.weights[below] * kernel(self.positions[below])))

    def integrate(self, kernel: Callable, upper: float = np.inf, epsabs: float = 1e-13,
                  epsrel: float = 1e-12) -> float:
        """int_{sigma < upper} kernel(sigma) d mu; ``kernel`` must accept arrays and scalars."""
        total = self.atomic_sum(kernel, upper)
        for density in self.densities:
            total += density.integrate(kernel, upper, self.variable, epsabs, epsrel)
        return total


def change_variable(measure: SpectralMeasure, target: Optional[str] = None) -> SpectralMeasure:
    """
    The same measure expressed in the other spectral variable. Atom weights are
    unchanged; densities keep their native variable and pick up the Jacobian on
    evaluation.
    """
    target = target or other_variable(measure.variable)
    check_variable(target)
    if target == measure.variable:
        return measure
    positions = to_variable(measure.positions, measure.variable, target)
    return replace(measure, variable=target, positions=positions)


def _density_from_params(params: Dict[str, Any]) -> Density:
    kind = params.get("kind")
    variable = params.get("variable", "omega")
    if kind == "builtin":
        return constant_density(float(params["coefficient"]), variable, float(params.get("origin_power", 0.0)),
                                float(params.get("frequency", 0.0)), name=params.get("name", "builtin"))
    if kind == "table":
        points = np.asarray(params["points"], dtype=float)
        if points.ndim != 2 or points.shape[1] != 2 or len(points) < 2:
            raise ConfigurationError("table density needs [[u, rho], ...] with at least two rows")
        if "tail" not in params:
            raise ConfigurationError("table density must declare a power-law tail")
        nodes, values = points[:, 0], points[:, 1]
        if np.any(np.diff(nodes) <= 0):
            raise ConfigurationError("table density nodes must be strictly increasing")
        power, coefficient = float(params["tail"]["power"]), float(params["tail"]["coefficient"])
        last = nodes[-1]

        def function(u):
            u = np.asarray(u, dtype=float)
            safe = np.maximum(u, last)
            return np.where(u <= last, np.interp(u, nodes, values), coefficient * safe ** power)
        return Density(function, variable, split=float(last), name=params.get("name", "table"))
    raise ConfigurationError("density kind must be 'table' or 'builtin', got %r" % kind)


def measure_from_dict(data: Dict[str, Any]) -> SpectralMeasure:
    variable = data.get("variable")
    atoms = np.asarray(data.get("atoms", []), dtype=float).reshape(-1, 2)
    densities = data.get("density", [])
    if isinstance(densities, dict):
        densities = [densities]
    envelope = data.get("envelope")
    if envelope is not None:
        envelope = Envelope(float(envelope["cutoff"]), float(envelope["spacing"]),
                            float(envelope["weight_bound"]), envelope.get("variable", variable))
    return SpectralMeasure(variable, atoms[:, 0], atoms[:, 1],
                           tuple(_density_from_params(density) for density in densities), envelope,
                           name=data.get("name", ""))


def load_measure(path: str) -> SpectralMeasure:
    """Read a measure file: {"variable", "atoms": [[pos, w], ...], "density": {...}, "envelope": {...}}."""
    logger.info("Reading spectral measure from %s", path)
    return measure_from_dict(Params.from_file(path).as_dict(quiet=True))


def atomic_measure(variable: str, atoms: Sequence[Tuple[float, float]], name: str = "") -> SpectralMeasure:
    atoms = sorted(atoms)
    positions = [position for position, _ in atoms]
    weights = [weight for _, weight in atoms]
    return SpectralMeasure(variable, np.asarray(positions, dtype=float), np.asarray(weights, dtype=float), name=name)
