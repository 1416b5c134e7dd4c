"""
Weighted linear least squares on bases of powers and power-logarithms,
``x^p`` and ``x^p ln x``, used to read asymptotic coefficients off sampled
Riesz means and kernels.
"""
import csv
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from rieszkit.checks import ConfigurationError, RankDeficientError

logger = logging.getLogger(__name__)

WEIGHTINGS = ("none", "geometric")


@dataclass(frozen=True, eq=False)
class MeanSamples:
    """R^alpha sampled at increasing positive x, in the measure's variable."""
    alpha: int
    x: np.ndarray
    values: np.ndarray
    variable: str = "lambda"

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if x.shape != values.shape:
            raise ConfigurationError("sample abscissae and values differ in length")
        if np.any(x <= 0) or np.any(np.diff(x) <= 0):
            raise ConfigurationError("sample points must be positive and strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", values)

    def to_csv(self, path: str):
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["x", "alpha", "value"])
            for x, value in zip(self.x, self.values):
                writer.writerow(["%.17g" % x, self.alpha, "%.17g" % value])


@dataclass(frozen=True)
class FitSpec:
    exponents: Tuple[Fraction, ...]
    log_flags: Tuple[bool, ...]
    window: Tuple[float, float]
    weighting: str = "geometric"
    misfit_tol: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(Fraction(p) for p in self.exponents))
        object.__setattr__(self, "log_flags", tuple(bool(flag) for flag in self.log_flags))
        if len(self.exponents) != len(self.log_flags):
            raise ConfigurationError("need one log flag per exponent")
        if len(set(zip(self.exponents, self.log_flags))) != len(self.exponents):
            raise ConfigurationError("basis functions must be distinct")
        if self.weighting not in WEIGHTINGS:
            raise ConfigurationError("weighting must be one of %s, got %r" % (WEIGHTINGS, self.weighting))
        low, high = self.window
        if not 0 < low < high:
            raise ConfigurationError("fit window must satisfy 0 < low < high, got %s" % (self.window,))

    @property
    def size(self) -> int:
        return len(self.exponents)

    def labels(self) -> List[str]:
        return ["x^(%s)%s" % (p, " ln x" if flag else "") for p, flag in zip(self.exponents, self.log_flags)]

    def design(self, x: np.ndarray) -> np.ndarray:
        columns = []
        for p, flag in zip(self.exponents, self.log_flags):
            column = x ** float(p)
            if flag:
                column = column * np.log(x)
            columns.append(column)
        return np.stack(columns, axis=1)


@dataclass(frozen=True, eq=False)
class FitResult:
    coefficients: np.ndarray
    stderr: np.ndarray
    residual_norm: float
    relative_residual: float
    condition: float
    window: Tuple[float, float]
    samples_used: int
    misfit: bool
    labels: List[str] = field(default_factory=list)

    def condition_report(self) -> dict:
        return {"condition_number": self.condition, "samples_used": self.samples_used,
                "relative_residual": self.relative_residual, "misfit": self.misfit}


def fit_basis(x, y, spec: FitSpec) -> FitResult:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    inside = (x >= spec.window[0]) & (x <= spec.window[1])
    x, y = x[inside], y[inside]
    if len(x) < spec.size:
        raise ConfigurationError("%d samples inside window %s for %d basis functions"
                                 % (len(x), spec.window, spec.size))

    design = spec.design(x)
    if spec.weighting == "geometric":
        row_scale = 1.0 / np.max(np.abs(design), axis=1)
    else:
        row_scale = np.ones(len(x))
    weighted = design * row_scale[:, None]
    target = y * row_scale
    column_scale = np.linalg.norm(weighted, axis=0)
    if np.any(column_scale == 0):
        raise RankDeficientError("a basis column vanishes on the window")
    normalised = weighted / column_scale

    solution, _, rank, singular = np.linalg.lstsq(normalised, target, rcond=None)
    if rank < spec.size:
        raise RankDeficientError("design matrix has rank %d for %d basis functions" % (rank, spec.size))
    condition = float(singular[0] / singular[-1])
    coefficients = solution / column_scale

    residual = target - normalised @ solution
    residual_norm = float(np.linalg.norm(residual))
    relative = residual_norm / max(float(np.linalg.norm(target)), np.finfo(float).tiny)
    dof = len(x) - spec.size
    if dof > 0:
        _, _, vt = np.linalg.svd(normalised, full_matrices=False)
        covariance = (vt.T / singular ** 2) @ vt * (residual_norm ** 2 / dof)
        stderr = np.sqrt(np.diag(covariance)) / column_scale
    else:
        stderr = np.zeros(spec.size)
    misfit = relative > spec.misfit_tol
    if misfit:
        logger.warning("fit on window %s leaves relative residual %.3g above %.3g", spec.window, relative,
                       spec.misfit_tol)
    logger.debug("fit with %d samples, condition number %.3g", len(x), condition)
    return FitResult(coefficients, stderr, residual_norm, relative, condition, spec.window, len(x), misfit,
                     spec.labels())


def asymptotic_fit(samples: MeanSamples, spec: FitSpec) -> FitResult:
    return fit_basis(samples.x, samples.values, spec)


def geometric_grid(low: float, high: float, count: int) -> np.ndarray:
    if count < 2 or not 0 < low < high:
        raise ConfigurationError("geometric grid needs 0 < low < high and at least two points")
    return np.geomspace(low, high, count)


def mean_basis(m: int, smax: int, variable: str, window: Sequence[float],
               misfit_tol: float = 1e-6, logs: bool = True) -> FitSpec:
    """
    Basis of the lambda-mean expansion, x^(m/2 - s/2), or of the omega-mean expansion,
    x^(m - s) with ln x on the odd-positive slots, for s = 0..smax.
    """
    exponents, flags = [], []
    for s in range(smax + 1):
        if variable == "lambda":
            exponents.append(Fraction(m - s, 2))
            flags.append(False)
        else:
            exponents.append(Fraction(m - s))
            flags.append(False)
            if logs and s > m and (s - m) % 2 == 1:
                exponents.append(Fraction(m - s))
                flags.append(True)
    return FitSpec(tuple(exponents), tuple(flags), tuple(window), misfit_tol=misfit_tol)
