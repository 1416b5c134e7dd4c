"""
Bodies of the three commands. Each returns an exit code: 0 when every check
passes, 1 when a check fails or an undetermined coefficient is consumed, 2 on a
configuration or usage error.
"""
import logging
import os
from fractions import Fraction
from typing import Any, Callable, Dict, List

import numpy as np
from allennlp.common import Params
from tqdm import tqdm

from rieszkit import util
from rieszkit.appendix_identities import (first_factor_closed, first_factor_sum, second_factor_closed,
                                          second_factor_sum, transform_check, verify_A1)
from rieszkit.checks import (CancellationError, ConfigurationError, PoleError, QuadratureError,
                             RankDeficientError, TruncationError, UndeterminedCoefficientError,
                             UnsupportedObservableError)
from rieszkit.coefficients import (cylinder_from_omega_diag, cylinder_terms_from_lambda_means, heat_from_lambda_diag,
                                   heat_terms_from_omega_means, lambda_diag_from_heat, lambda_diag_from_omega_diag,
                                   omega_diag_from_cylinder, omega_diag_from_lambda_diag, verify_consistency)
from rieszkit.coefficients.types import DiagonalLambdaCoeffs, DiagonalOmegaCoeffs, KernelExpansion
from rieszkit.exact_scalar import pochhammer
from rieszkit.manifolds import (Circle, compare_kernel_expansion, compare_means, euler_maclaurin_prediction,
                                trapezoid_defect)

logger = logging.getLogger(__name__)

PASS, FAIL, USAGE = 0, 1, 2


def _row(identity: str, params: Dict[str, Any], result, passed: bool) -> Dict[str, Any]:
    if not passed:
        logger.warning("%s failed at %s: %s", identity, params, result)
    return {"identity": identity, "params": params, "result": str(result), "pass": bool(passed)}


def consistency_rows(alpha_max: int, dimensions: List[int]) -> List[Dict[str, Any]]:
    rows = []
    for m in dimensions:
        for alpha in range(1, alpha_max + 1):
            for s in range(alpha + 1):
                report = verify_consistency(alpha, m, s)
                for name, target in report.expected().items():
                    value = getattr(report, name)
                    rows.append(_row(name, {"alpha": alpha, "m": m, "s": s}, value, value == target))
    return rows


def random_rational(rng: np.random.RandomState, span: int = 40, max_denominator: int = 9) -> Fraction:
    return Fraction(int(rng.randint(-span, span + 1)), int(rng.randint(1, max_denominator + 1)))


def appendix_rows(alpha_max: int, sweep_size: int, rng: np.random.RandomState) -> List[Dict[str, Any]]:
    rows = []
    for alpha in tqdm(range(1, alpha_max + 1), desc="factor identities"):
        found, attempts = 0, 0
        while found < sweep_size:
            attempts += 1
            if attempts > 100 * sweep_size:
                raise ConfigurationError("could not draw %d pole-free points for alpha=%d" % (sweep_size, alpha))
            z = random_rational(rng)
            try:
                first = (first_factor_sum(alpha, z), first_factor_closed(alpha, z))
                second = (second_factor_sum(alpha, z), second_factor_closed(alpha, z))
                product = verify_A1(alpha, z)
            except PoleError:
                continue
            found += 1
            params = {"alpha": alpha, "z": str(z)}
            rows.append(_row("first_factor_closed", params, first[0] - first[1], first[0] == first[1]))
            rows.append(_row("second_factor_closed", params, second[0] - second[1], second[0] == second[1]))
            rows.append(_row("factor_product", params, product, product == 1))
    return rows


def _noninteger(rng: np.random.RandomState) -> Fraction:
    while True:
        value = random_rational(rng, span=12, max_denominator=7)
        if value.denominator != 1:
            return value


def hypergeometric_rows(count: int, max_n: int, rng: np.random.RandomState) -> List[Dict[str, Any]]:
    rows, attempts = [], 0
    while len(rows) < count:
        attempts += 1
        if attempts > 100 * count:
            raise ConfigurationError("could not draw %d valid 3F2 parameter tuples" % count)
        a, b, e, f = (_noninteger(rng) for _ in range(4))
        n = int(rng.randint(0, max_n + 1))
        if pochhammer(1 + a - f - n, n) == 0 or pochhammer(1 + a - e - n, n) == 0:
            continue
        try:
            lhs, rhs = transform_check(a, b, n, e, f)
        except (ConfigurationError, PoleError):
            continue
        params = {"a": str(a), "b": str(b), "n": n, "e": str(e), "f": str(f)}
        rows.append(_row("hypergeometric_transform", params, lhs - rhs, lhs == rhs))
    return rows


def cancellation_rows(alpha_max: int, dimensions: List[int]) -> List[Dict[str, Any]]:
    rows = []
    for m in dimensions:
        for alpha in range(alpha_max + 1):
            for name, build in (("heat_log_cancellation", heat_terms_from_omega_means),
                                ("cylinder_log_cancellation", cylinder_terms_from_lambda_means)):
                try:
                    build(m, alpha)
                    rows.append(_row(name, {"alpha": alpha, "m": m}, "cancelled", True))
                except CancellationError as error:
                    rows.append(_row(name, {"alpha": alpha, "m": m}, error, False))
    return rows


def cmd_identities(config: Params, out_dir: str) -> int:
    settings = config.as_dict(quiet=True).get("identities", {})
    alpha_max = settings.get("alpha_max", 8)
    dimensions = settings.get("dimensions", [1, 2, 3])
    try:
        if alpha_max < 1:
            raise ConfigurationError("alpha_max must be at least 1, got %r" % alpha_max)
        if not dimensions or any(m < 1 for m in dimensions):
            raise ConfigurationError("dimensions must be positive, got %r" % dimensions)
        rng = np.random.RandomState(config["random_seed"])
        rows = consistency_rows(alpha_max, dimensions)
        rows += appendix_rows(alpha_max, settings.get("sweep_size", 20), rng)
        rows += hypergeometric_rows(settings.get("hypergeometric_tuples", 50), settings.get("max_n", 6), rng)
        rows += cancellation_rows(alpha_max, dimensions)
    except ConfigurationError as error:
        logger.error(str(error))
        return USAGE
    failures = sum(not row["pass"] for row in rows)
    util.write_report(out_dir, "identities.json", {"rows": rows, "failures": failures}, config)
    logger.info("%d identity checks, %d failures", len(rows), failures)
    return FAIL if failures else PASS


DIRECTIONS: Dict[str, Callable] = {
    "heat2lambda": lambda_diag_from_heat,
    "lambda2heat": heat_from_lambda_diag,
    "lambda2omega": omega_diag_from_lambda_diag,
    "omega2lambda": lambda_diag_from_omega_diag,
    "cylinder2omega": omega_diag_from_cylinder,
    "omega2cylinder": cylinder_from_omega_diag,
}


def _table_name(coefficients) -> str:
    if isinstance(coefficients, KernelExpansion):
        return coefficients.kind
    if isinstance(coefficients, DiagonalLambdaCoeffs):
        return "lambda"
    if isinstance(coefficients, DiagonalOmegaCoeffs):
        return "omega"
    return type(coefficients).__name__


def cmd_transform(input_path: str, direction: str, output_path: str, m: int = None) -> int:
    try:
        if direction not in DIRECTIONS:
            raise ConfigurationError("direction must be one of %s, got %r" % (sorted(DIRECTIONS), direction))
        coefficients = util.read_coefficients(input_path)
        source = direction.split("2")[0]
        if _table_name(coefficients) != source:
            raise ConfigurationError("%s transforms %s coefficients, %s holds %s"
                                     % (direction, source, input_path, _table_name(coefficients)))
        if m is not None and coefficients.m != m:
            raise ConfigurationError("--m %d disagrees with m=%d in %s" % (m, coefficients.m, input_path))
        result = DIRECTIONS[direction](coefficients)
    except UndeterminedCoefficientError as error:
        logger.error("%s: undetermined entries cannot be consumed (%s)", input_path, error)
        return FAIL
    except ConfigurationError as error:
        logger.error(str(error))
        return USAGE
    util.write_coefficients(result, output_path)
    return PASS


def _exact_rows(manifold, observable, smax: int) -> List[Dict[str, Any]]:
    """Euler-Maclaurin and trapezoid checks against the exact tables where they apply."""
    rows = []
    if isinstance(manifold, Circle) and not observable.is_trace and not observable.off_diagonal:
        expected = manifold.expected_coeffs(observable, "omega", smax)
        cylinder = manifold.expected_coeffs(observable, "cylinder", smax)
        for s in range(2, smax + 1):
            prediction = euler_maclaurin_prediction(manifold, s)
            passed = prediction.c == expected.c[s] and prediction.e == cylinder.coefficients[s]
            rows.append(_row("euler_maclaurin", {"s": s}, "c_ss = %s, e_s = %s" % (prediction.c, prediction.e), passed))
    if observable.is_trace:
        expected = manifold.expected_coeffs(observable, "omega", 1)
        defect = trapezoid_defect(manifold)
        rows.append(_row("trapezoid_defect", {"s": 1}, defect, defect == expected.c[1]))
    return rows


def cmd_model_report(config: Params, out_dir: str) -> int:
    settings = config.as_dict(quiet=True)
    try:
        if "manifold" not in settings:
            raise ConfigurationError("model reports need a manifold spec")
        manifold, observable = util.manifold_from_config(settings["manifold"])
    except ConfigurationError as error:
        logger.error(str(error))
        return USAGE

    tolerances = settings.get("tolerances", {})
    kernels = settings.get("kernels", {})
    means = settings.get("means", {})
    os.makedirs(out_dir, exist_ok=True)
    summary: Dict[str, Any] = {"manifold": manifold.describe(), "observable": observable.describe(),
                               "kernels": [], "means": [], "exact": []}
    passed = True
    try:
        for kind in ("heat", "cylinder"):
            options = kernels.get(kind, {})
            try:
                comparison = compare_kernel_expansion(
                    manifold, observable, kind, options.get("smax", 4 if kind == "heat" else 6),
                    tuple(options["window"]) if "window" in options else None, kernels.get("points", 64),
                    tolerances.get("truncation", 1e-14), tolerances.get("kernel", 1e-10),
                    tolerances.get("fit_relative", 1e-3), kernels.get("compare", 3),
                    tolerances.get("misfit", 1e-6), options.get("logs", True), progress=True)
            except UnsupportedObservableError as error:
                logger.info("skipping %s expansion: %s", kind, error)
                summary["kernels"].append({"kind": kind, "skipped": str(error)})
                continue
            comparison.samples.to_csv(os.path.join(out_dir, "%s_kernel.csv" % kind))
            summary["kernels"].append(comparison.to_dict())
            passed = passed and comparison.passed

        for alpha in means.get("alpha", [3]):
            try:
                comparison = compare_means(manifold, observable, alpha, means.get("variable", "omega"),
                                           tuple(means.get("window", (100.0, 2000.0))), means.get("smax", 3),
                                           means.get("points", 64), tolerances.get("fit_relative", 1e-3),
                                           means.get("compare", 1), tolerances.get("misfit", 1e-6),
                                           means.get("logs", True), progress=True)
            except UnsupportedObservableError as error:
                logger.info("skipping R^%d means: %s", alpha, error)
                summary["means"].append({"alpha": alpha, "skipped": str(error)})
                continue
            comparison.samples.to_csv(os.path.join(out_dir, "means_alpha%d.csv" % alpha))
            summary["means"].append(comparison.to_dict())
            passed = passed and comparison.passed

        try:
            exact_rows = _exact_rows(manifold, observable, kernels.get("cylinder", {}).get("smax", 6))
        except UnsupportedObservableError as error:
            logger.info("skipping exact checks: %s", error)
            exact_rows = []
        summary["exact"] = exact_rows
        passed = passed and all(row["pass"] for row in exact_rows)
    except ConfigurationError as error:
        logger.error(str(error))
        return USAGE
    except (QuadratureError, TruncationError, RankDeficientError) as error:
        logger.error("%s: %s", type(error).__name__, error)
        return FAIL

    summary["pass"] = passed
    util.write_report(out_dir, "report.json", summary, config)
    logger.info("%s %s: %s", manifold.describe(), observable.describe(), "pass" if passed else "FAIL")
    return PASS if passed else FAIL
