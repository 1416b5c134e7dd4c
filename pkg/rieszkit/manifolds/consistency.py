"""
Checks that tie the model manifolds to the coefficient algebra: Euler-Maclaurin
predictions on the circle, the trapezoid defect of a ladder without its zero mode,
decay of off-diagonal means on the line, and end-to-end comparisons of fitted
kernel and mean expansions against the exact tables.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from rieszkit.checks import ConfigurationError
from rieszkit.coefficients.transforms import lambda_table_from_diag, omega_table_from_diag
from rieszkit.coefficients.types import UNDETERMINED, odd_positive
from rieszkit.exact_scalar import ExactScalar, bernoulli, pi_power
from rieszkit.green_functions import (DEFAULT_WINDOWS, ExpansionEstimate, fit_kernel_expansion, kernel_samples,
                                      ladder_cutoff)
from rieszkit.manifolds.circle import Circle
from rieszkit.manifolds.line import Line
from rieszkit.manifolds.manifold import Manifold, Observable, exact
from rieszkit.means.fitting import asymptotic_fit, geometric_grid, mean_basis
from rieszkit.means.measure import SpectralMeasure, change_variable
from rieszkit.means.riesz import mean_samples, riesz_mean

logger = logging.getLogger(__name__)


def spectral_measure(manifold: Manifold, observable: Observable, cutoff: float) -> SpectralMeasure:
    if not cutoff > 0:
        raise ConfigurationError("cutoff must be positive, got %r" % cutoff)
    return manifold.spectral_measure(observable, cutoff)


def expected_coeffs(manifold: Manifold, observable: Observable, table: str, smax: int):
    return manifold.expected_coeffs(observable, table, smax)


@dataclass(frozen=True)
class EulerMaclaurinPrediction:
    """The circle diagonal's c_ss and cylinder e_s at one order, with c_ss = s! e_s."""
    s: int
    c: ExactScalar
    e: ExactScalar


def euler_maclaurin_prediction(manifold: Manifold, s: int) -> EulerMaclaurinPrediction:
    """
    c_ss of the circle diagonal from the Euler-Maclaurin correction of order s: the
    (s-1)-th derivative of (1 - omega_n / omega)^s in n contributes
    (-1)^p pi^p s! / (L^(p+1) (s-p)!) omega^(-p), p = s - 1, weighted by (-1)^p B_s / s!.
    The cylinder coefficient e_s = c_ss / s! comes along.
    """
    if not isinstance(manifold, Circle):
        raise ConfigurationError("Euler-Maclaurin predictions are made for the circle, got %s"
                                 % manifold.describe())
    if int(s) != s or s < 2:
        raise ConfigurationError("the correction starts at s = 2, got %r" % s)
    s = int(s)
    p = s - 1
    length = exact(manifold.L)
    derivative = pi_power(2 * p, Fraction((-1) ** p * math.factorial(s), math.factorial(s - p)) / length ** (p + 1))
    c = derivative * ExactScalar.coerce((-1) ** p * bernoulli(s) / math.factorial(s))
    return EulerMaclaurinPrediction(s, c, c * ExactScalar.coerce(Fraction(1, math.factorial(s))))


def trapezoid_defect(manifold: Manifold) -> ExactScalar:
    """
    Zero-mode weight minus the half rung the trapezoid rule puts at omega = 0: the
    constant the ladder sum carries beyond its integral.
    """
    zero, rung = manifold.ladder_weights(Observable("trace"))
    return zero - rung * ExactScalar.coerce(Fraction(1, 2))


@dataclass(frozen=True, eq=False)
class DecayReport:
    s: int
    delta: float
    exponent: float
    bound: float
    centers: np.ndarray
    maxima: np.ndarray

    @property
    def passed(self) -> bool:
        return self.exponent <= self.bound

    def to_dict(self) -> dict:
        return {"s": self.s, "delta": self.delta, "exponent": self.exponent, "bound": self.bound,
                "pass": self.passed}


DECAY_BLOCKS = 6


def offdiagonal_decay_check(manifold: Manifold, s: int, x: float, y: float,
                            grid: Optional[Sequence[float]] = None) -> DecayReport:
    """
    Fits the decay exponent of |R^s_lambda E(x, y)| on the line from the maxima over
    log-spaced blocks of the grid; the bound is (1 - s)/2 + 0.1.
    """
    if not isinstance(manifold, Line):
        raise ConfigurationError("the off-diagonal decay check runs on the line, got %s" % manifold.describe())
    if x == y:
        raise ConfigurationError("the decay check needs distinct points")
    if int(s) != s or s < 0:
        raise ConfigurationError("Riesz order must be a nonnegative integer, got %r" % s)
    grid = np.geomspace(400.0, 4.0e4, 240) if grid is None else np.asarray(grid, dtype=float)
    if len(grid) < 8 * DECAY_BLOCKS or grid[-1] < 10 * grid[0]:
        raise ConfigurationError("decay grid too short: need %d points spanning a decade, got %d on [%g, %g]"
                                 % (8 * DECAY_BLOCKS, len(grid), grid[0], grid[-1]))
    measure = change_variable(manifold.spectral_measure(Observable("diagonal", x, y)), "lambda")
    values = np.abs([riesz_mean(measure, s, point) for point in grid])
    centers, maxima = [], []
    for block, chunk in zip(np.array_split(grid, DECAY_BLOCKS), np.array_split(values, DECAY_BLOCKS)):
        centers.append(math.sqrt(block[0] * block[-1]))
        maxima.append(max(float(np.max(chunk)), np.finfo(float).tiny))
    exponent = float(np.polyfit(np.log(centers), np.log(maxima), 1)[0])
    bound = (1 - s) / 2 + 0.1
    logger.info("R^%d_lambda E(%g, %g) decays with exponent %.3f (bound %.2f)", s, x, y, exponent, bound)
    return DecayReport(int(s), abs(x - y), exponent, bound, np.asarray(centers), np.asarray(maxima))


@dataclass(frozen=True)
class CoefficientRow:
    name: str
    s: int
    expected: Optional[float]
    fitted: float
    stderr: float
    compared: bool
    tolerance: float

    @property
    def relative_error(self) -> Optional[float]:
        if self.expected is None:
            return None
        if self.expected == 0:
            return abs(self.fitted)
        return abs(self.fitted - self.expected) / abs(self.expected)

    @property
    def passed(self) -> Optional[bool]:
        if not self.compared:
            return None
        return self.relative_error <= self.tolerance

    def to_dict(self) -> dict:
        return {"coefficient": self.name, "s": self.s, "expected": self.expected, "fitted": self.fitted,
                "stderr": self.stderr, "relative_error": self.relative_error, "compared": self.compared,
                "pass": self.passed}


def _rows(name: str, log_name: str, expected: Sequence, expected_logs: Sequence, fitted: Dict[Tuple[int, bool],
          Tuple[float, float]], tolerance: float, compare_count: int) -> List[CoefficientRow]:
    rows, budget = [], compare_count
    for (s, has_log), (value, error) in sorted(fitted.items()):
        exact_value = (expected_logs if has_log else expected)[s]
        known = None if exact_value is UNDETERMINED else float(exact_value)
        compared = known is not None and known != 0 and budget > 0
        if compared:
            budget -= 1
        rows.append(CoefficientRow("%s_%d" % (log_name if has_log else name, s), s, known, float(value),
                                   float(error), compared, tolerance))
    return rows


@dataclass(frozen=True, eq=False)
class KernelComparison:
    kind: str
    observable: str
    estimate: ExpansionEstimate
    rows: List[CoefficientRow]
    closed_form_error: float
    closed_form_tol: float
    samples: object = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        return self.closed_form_error <= self.closed_form_tol and all(row.passed is not False for row in self.rows)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "observable": self.observable, "closed_form_error": self.closed_form_error,
                "closed_form_tol": self.closed_form_tol, "coefficients": [row.to_dict() for row in self.rows],
                "condition": self.estimate.fit.condition_report(), "pass": self.passed}


def sampled_measure(manifold: Manifold, observable: Observable, kind: str, tmin: float,
                    truncation: float) -> SpectralMeasure:
    """The spectral measure with an atom cutoff certified down to tmin, or the complete measure."""
    sample_measure = manifold.spectral_measure(observable, 1.0)
    envelope = sample_measure.envelope
    if envelope is None:
        return sample_measure
    cutoff = ladder_cutoff(kind, tmin, truncation, envelope.spacing, envelope.weight_bound, envelope.variable)
    logger.info("%s %s: %s kernel sums atoms up to omega = %.6g", manifold.describe(), observable.describe(),
                kind, cutoff)
    return manifold.spectral_measure(observable, cutoff)


def compare_kernel_expansion(manifold: Manifold, observable: Observable, kind: str, smax: int,
                             window: Optional[Tuple[float, float]] = None, points: int = 64,
                             truncation: float = 1e-14, kernel_tol: float = 1e-10, fit_tol: float = 1e-3,
                             compare_count: int = 3, misfit_tol: float = 1e-6, logs: bool = True,
                             progress: bool = False) -> KernelComparison:
    """
    Samples the kernel from the spectral measure, checks it against the closed form,
    fits the small-t expansion and compares the first ``compare_count`` nonzero exact
    coefficients at relative tolerance ``fit_tol``.
    """
    window = tuple(window or DEFAULT_WINDOWS[kind])
    expected = manifold.expected_coeffs(observable, kind, smax)
    times = geometric_grid(window[0], window[1], points)
    measure = sampled_measure(manifold, observable, kind, window[0], truncation)
    samples = kernel_samples(measure, kind, times, truncation, progress)
    closed = np.asarray([manifold.observable_kernel(kind, t, observable) for t in times])
    closed_error = float(np.max(np.abs(samples.values - closed) / np.maximum(np.abs(closed), 1.0)))
    if closed_error > kernel_tol:
        logger.warning("%s %s kernel: spectral sum and closed form differ by %.3g", manifold.describe(), kind,
                       closed_error)

    estimate = fit_kernel_expansion(samples, manifold.dimension, smax, window, misfit_tol, logs)
    fitted = {(s, False): (estimate.coefficients[s], estimate.stderr[s]) for s in range(smax + 1)}
    fitted.update({(s, True): (value, estimate.log_stderr[s]) for s, value in estimate.logs.items()})
    name = "b" if kind == "heat" else "e"
    rows = _rows(name, "f", expected.coefficients, expected.logs, fitted, fit_tol, compare_count)
    for row in rows:
        if row.passed is False:
            logger.warning("%s %s: %s fitted %.10g, expected %.10g", manifold.describe(), observable.describe(),
                           row.name, row.fitted, row.expected)
    return KernelComparison(kind, observable.describe(), estimate, rows, closed_error, kernel_tol, samples)


@dataclass(frozen=True, eq=False)
class MeanComparison:
    alpha: int
    variable: str
    observable: str
    rows: List[CoefficientRow]
    condition: dict
    samples: object = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        return all(row.passed is not False for row in self.rows)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "variable": self.variable, "observable": self.observable,
                "coefficients": [row.to_dict() for row in self.rows], "condition": self.condition,
                "pass": self.passed}


def expected_mean_row(manifold: Manifold, observable: Observable, alpha: int, variable: str,
                      smax: int) -> Tuple[Sequence, Sequence]:
    """Exact coefficients of R^alpha in ``variable``, s = 0..smax, with the log coefficients (zero in lambda)."""
    if variable == "lambda":
        diag = manifold.expected_coeffs(observable, "lambda", smax)
        row = lambda_table_from_diag(diag, max(alpha, smax)).a[alpha]
        return row, [0] * len(row)
    table = omega_table_from_diag(manifold.expected_coeffs(observable, "omega", smax), alpha)
    return table.c[alpha], table.d[alpha]


def compare_means(manifold: Manifold, observable: Observable, alpha: int, variable: str = "omega",
                  window: Tuple[float, float] = (100.0, 2000.0), smax: int = 3, points: int = 64,
                  fit_tol: float = 1e-3, compare_count: int = 1, misfit_tol: float = 1e-6,
                  logs: bool = True, progress: bool = False) -> MeanComparison:
    """Fits R^alpha on ``window`` and compares the leading exact coefficients."""
    cutoff = window[1] if variable == "omega" else math.sqrt(window[1])
    measure = manifold.spectral_measure(observable, cutoff)
    if variable == "lambda":
        measure = change_variable(measure, "lambda")
    samples = mean_samples(measure, alpha, geometric_grid(window[0], window[1], points), progress)
    m = manifold.dimension
    spec = mean_basis(m, smax, variable, window, misfit_tol, logs)
    result = asymptotic_fit(samples, spec)
    slots = []
    for s in range(smax + 1):
        slots.append((s, False))
        if logs and variable == "omega" and odd_positive(m, s):
            slots.append((s, True))
    fitted = {slot: (value, error) for slot, value, error in zip(slots, result.coefficients, result.stderr)}
    expected, expected_logs = expected_mean_row(manifold, observable, alpha, variable, smax)
    name = "a" if variable == "lambda" else "c"
    rows = _rows(name, "d", expected, expected_logs, fitted, fit_tol, compare_count)
    return MeanComparison(alpha, variable, observable.describe(), rows, result.condition_report(), samples)
