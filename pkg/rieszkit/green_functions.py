"""
Heat and cylinder kernels as Laplace transforms of spectral measures,

    K(t) = int e^{-lambda t} d mu,        T(t) = int e^{-omega t} d mu,

with certified truncation of atomic ladders, plus the closed-form model kernels,
the derivative tables of the two weights, exponential integrals and fits of the
small-t expansions.
"""
import csv
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy import optimize, special
from tqdm import tqdm

from rieszkit.checks import ConfigurationError, TruncationError
from rieszkit.coefficients.types import odd_positive
from rieszkit.means.fitting import FitResult, FitSpec, fit_basis
from rieszkit.means.measure import Envelope, SpectralMeasure, integrate_checked
from rieszkit.means.weights import KernelWeight

logger = logging.getLogger(__name__)

KINDS = ("heat", "cylinder")

DEFAULT_WINDOWS = {"heat": (0.001, 0.03), "cylinder": (0.005, 0.1)}

WEIGHT_ALIASES = {"gaussian": "gaussian", "sqrtExp": "sqrt_exponential", "sqrt_exponential": "sqrt_exponential"}


def check_kind(kind: str):
    if kind not in KINDS:
        raise ConfigurationError("kernel kind must be heat or cylinder, got %r" % kind)


def laplace_kernel(kind: str, t: float, variable: str):
    """The weight e^{-lambda t} (heat) or e^{-omega t} (cylinder) as a function of ``variable``."""
    check_kind(kind)
    if kind == "heat":
        if variable == "lambda":
            return lambda sigma: np.exp(-t * sigma)
        return lambda sigma: np.exp(-t * np.square(sigma))
    if variable == "lambda":
        return lambda sigma: np.exp(-t * np.sqrt(sigma))
    return lambda sigma: np.exp(-t * sigma)


def laplace_tail(kind: str, t: float, variable: str, cutoff: float) -> float:
    """int_cutoff^inf of ``laplace_kernel`` in ``variable``."""
    if kind == "heat" and variable == "omega":
        return 0.5 * math.sqrt(math.pi / t) * special.erfc(cutoff * math.sqrt(t))
    if kind == "cylinder" and variable == "lambda":
        root = math.sqrt(cutoff)
        return 2.0 * math.exp(-root * t) * (root * t + 1.0) / t ** 2
    return math.exp(-cutoff * t) / t


def tail_certificate(envelope: Optional[Envelope], kind: str, t: float) -> float:
    if envelope is None:
        return 0.0
    kernel = laplace_kernel(kind, t, envelope.variable)
    return envelope.tail_bound(kernel, laplace_tail(kind, t, envelope.variable, envelope.cutoff))


def kernel_value(measure: SpectralMeasure, kind: str, t: float, tol: float = 1e-12) -> Tuple[float, float]:
    """The Laplace transform of ``measure`` at t together with its truncation bound."""
    check_kind(kind)
    if not t > 0:
        raise ConfigurationError("t must be positive, got %r" % t)
    bound = tail_certificate(measure.envelope, kind, t)
    if bound > tol:
        raise TruncationError("%s kernel at t=%g: dropped atoms may contribute %.3g, above %.3g"
                              % (kind, t, bound, tol))
    return measure.integrate(laplace_kernel(kind, t, measure.variable)), bound


def heat_trace(measure: SpectralMeasure, t: float, tol: float = 1e-12) -> float:
    return kernel_value(measure, "heat", t, tol)[0]


def cylinder_trace(measure: SpectralMeasure, t: float, tol: float = 1e-12) -> float:
    return kernel_value(measure, "cylinder", t, tol)[0]


def ladder_cutoff(kind: str, tmin: float, tol: float, spacing: float, weight_bound: float = 1.0,
                  variable: str = "omega") -> float:
    """Smallest atom cutoff whose envelope certifies ``tol`` for every t >= tmin."""
    check_kind(kind)
    if tmin <= 0 or tol <= 0:
        raise ConfigurationError("ladder cutoff needs positive tmin and tol")

    def excess(cutoff):
        envelope = Envelope(cutoff, spacing, weight_bound, variable)
        return math.log(max(tail_certificate(envelope, kind, tmin), 1e-300)) - math.log(tol)

    upper = spacing
    while excess(upper) > 0:
        upper *= 2
    if upper == spacing:
        return upper
    xtol = 1e-6 * upper
    # step past the bracket tolerance so the certificate holds at the returned cutoff
    return optimize.brentq(excess, upper / 2, upper, xtol=xtol) + 2 * xtol


@dataclass(frozen=True, eq=False)
class KernelSamples:
    kind: str
    t: np.ndarray
    values: np.ndarray
    truncation_bound: float = 0.0

    def __post_init__(self):
        check_kind(self.kind)
        t = np.asarray(self.t, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if t.shape != values.shape:
            raise ConfigurationError("kernel sample times and values differ in length")
        if np.any(t <= 0) or np.any(np.diff(t) <= 0):
            raise ConfigurationError("kernel sample times must be positive and increasing")
        if self.truncation_bound < 0:
            raise ConfigurationError("truncation bound must be nonnegative")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", values)

    def to_csv(self, path: str):
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["kind", "t", "value", "truncation_bound"])
            for t, value in zip(self.t, self.values):
                writer.writerow([self.kind, "%.17g" % t, "%.17g" % value, "%.17g" % self.truncation_bound])


def kernel_samples(measure: SpectralMeasure, kind: str, times: Iterable[float], tol: float = 1e-12,
                   progress: bool = False) -> KernelSamples:
    times = np.asarray(list(times), dtype=float)
    values, worst = [], 0.0
    for t in tqdm(times, desc="%s kernel" % kind, disable=not progress):
        value, bound = kernel_value(measure, kind, t, tol)
        values.append(value)
        worst = max(worst, bound)
    return KernelSamples(kind, times, np.asarray(values), worst)


def model_kernel(manifold, kind: str, t: float, x: Optional[float] = None, y: Optional[float] = None) -> float:
    """Closed-form kernel of a model manifold; ``x`` None means the trace."""
    check_kind(kind)
    if not t > 0:
        raise ConfigurationError("t must be positive, got %r" % t)
    if x is None:
        return manifold.trace_kernel(kind, t)
    return manifold.kernel(kind, t, x, x if y is None else y)


def weight_derivs(kind: str, j: int, t: float, point: float) -> float:
    """d^j/d omega^j e^{-omega^2 t} (gaussian) or d^j/d lambda^j e^{-t sqrt(lambda)} (sqrtExp)."""
    if kind not in WEIGHT_ALIASES:
        raise ConfigurationError("weight kind must be gaussian or sqrtExp, got %r" % kind)
    if j < 1:
        raise ConfigurationError("derivative order must be at least 1, got %d" % j)
    weight = KernelWeight.by_name(WEIGHT_ALIASES[kind])(t=t)
    return float(weight.derivative(j, point))


def en_eval(n: int, t: float) -> float:
    """
    E_n(t) = int_1^inf e^{-t u} u^{-n} du. Power series with the logarithmic term for
    t <= 1, quadrature beyond.
    """
    if int(n) != n or n < 1:
        raise ConfigurationError("E_n needs a positive integer n, got %r" % n)
    if not t > 0:
        raise ConfigurationError("E_n needs t > 0, got %r" % t)
    n = int(n)
    if t > 1:
        return integrate_checked(lambda u: math.exp(-t * u) * u ** (-n), 1.0, np.inf)[0]
    total = (-t) ** (n - 1) / math.factorial(n - 1) * (float(special.digamma(n)) - math.log(t))
    term, k = 1.0, 0
    while True:
        if k != n - 1:
            total -= term / (k - n + 1)
        k += 1
        term *= -t / k
        # the remaining terms alternate or shrink factorially once k > n
        if k > n and abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return total


@dataclass(frozen=True, eq=False)
class ExpansionEstimate:
    m: int
    kind: str
    coefficients: np.ndarray
    stderr: np.ndarray
    logs: Dict[int, float]
    log_stderr: Dict[int, float]
    window: Tuple[float, float]
    fit: FitResult = field(repr=False, default=None)

    @property
    def size(self) -> int:
        return len(self.coefficients) - 1

    def to_dict(self) -> dict:
        name = "b" if self.kind == "heat" else "e"
        coefficients = {"%s_%d" % (name, s): {"estimate": float(value), "stderr": float(error)}
                        for s, (value, error) in enumerate(zip(self.coefficients, self.stderr))}
        for s, value in self.logs.items():
            coefficients["f_%d" % s] = {"estimate": float(value), "stderr": float(self.log_stderr[s])}
        return {"m": self.m, "kind": self.kind, "coefficients": coefficients, "window": list(self.window),
                "condition": self.fit.condition_report() if self.fit is not None else None}


def expansion_basis(kind: str, m: int, smax: int, window: Tuple[float, float], misfit_tol: float = 1e-6,
                    logs: bool = True) -> Tuple[FitSpec, List[Tuple[int, bool]]]:
    """
    Heat basis t^{(s-m)/2}; cylinder basis t^{s-m} plus t^{s-m} ln t on odd-positive slots.
    ``logs=False`` drops the log columns when the log coefficients are known to vanish.
    """
    check_kind(kind)
    exponents, flags, slots = [], [], []
    for s in range(smax + 1):
        if kind == "heat":
            exponents.append(Fraction(s - m, 2))
        else:
            exponents.append(Fraction(s - m))
        flags.append(False)
        slots.append((s, False))
        if logs and kind == "cylinder" and odd_positive(m, s):
            exponents.append(Fraction(s - m))
            flags.append(True)
            slots.append((s, True))
    return FitSpec(tuple(exponents), tuple(flags), tuple(window), misfit_tol=misfit_tol), slots


def fit_kernel_expansion(samples: KernelSamples, m: int, smax: int, window: Optional[Tuple[float, float]] = None,
                         misfit_tol: float = 1e-6, logs: bool = True) -> ExpansionEstimate:
    if m < 1 or smax < 0:
        raise ConfigurationError("need m >= 1 and smax >= 0")
    window = tuple(window or DEFAULT_WINDOWS[samples.kind])
    spec, slots = expansion_basis(samples.kind, m, smax, window, misfit_tol, logs)
    result = fit_basis(samples.t, samples.values, spec)
    coefficients, stderr = np.zeros(smax + 1), np.zeros(smax + 1)
    log_values, log_stderr = {}, {}
    for (s, has_log), value, error in zip(slots, result.coefficients, result.stderr):
        if has_log:
            log_values[s], log_stderr[s] = float(value), float(error)
        else:
            coefficients[s], stderr[s] = value, error
    logger.info("%s expansion fit for m=%d on t in [%g, %g]: condition %.3g", samples.kind, m, window[0],
                window[1], result.condition)
    return ExpansionEstimate(m, samples.kind, coefficients, stderr, log_values, log_stderr, window, result)
