"""
Exact maps between the coefficient families of lambda means (a), omega means
(c, d), the heat kernel (b) and the cylinder kernel (e, f).

The order-alpha factors below are rational functions of (alpha, m, s). The
diagonal (alpha = s) maps are obtained by specialising them, so the general and
the diagonal formulas cannot drift apart.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from rieszkit.checks import ConfigurationError, PoleError
from rieszkit.coefficients.types import (
    UNDETERMINED, CoeffTable, DiagonalLambdaCoeffs, DiagonalOmegaCoeffs, KernelExpansion, OmegaMeans, determined,
    odd_positive,
)
from rieszkit.exact_scalar import ExactScalar, ZERO, gamma_ratio, gamma_value, inverse_factorial, psi_eval

logger = logging.getLogger(__name__)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _reciprocal(value: Fraction, what: str) -> Fraction:
    if value == 0:
        raise PoleError("%s vanishes" % what)
    return 1 / value


# Order-alpha factors

def log_factor(alpha: int, m: int, s: int) -> Fraction:
    """d_{alpha s} / a_{alpha s} on an odd-positive slot."""
    return _sign(alpha + m - s + 1) * inverse_factorial(s - m - 1) * inverse_factorial(m - s + alpha) \
        * gamma_ratio(Fraction(s - m, 2), alpha)


def power_bracket(alpha: int, m: int, s: int) -> Fraction:
    """c_{alpha s} / a_{alpha s} when s - m is even or negative."""
    total = Fraction(1, 2 ** alpha)
    for j in range(0, alpha, 2):
        denominator = _reciprocal(Fraction(m - s + j + 1), "m - s + j + 1 at j=%d" % j)
        total += _sign(alpha - j) * denominator * inverse_factorial(j) * inverse_factorial(alpha - 1 - j) \
            * gamma_ratio(Fraction(j + 1, 2), alpha)
    return total


def inverse_log_factor(alpha: int, m: int, s: int) -> Fraction:
    """a_{alpha s} / d_{alpha s} on an odd-positive slot."""
    total = Fraction(0)
    for j in range(alpha // 2, alpha):
        shift = _reciprocal(Fraction(m - s, 2) + j + 1, "m/2 - s/2 + j + 1 at j=%d" % j)
        total += _sign(alpha - j) * shift ** 2 * inverse_factorial(j) * inverse_factorial(alpha - 1 - j) \
            * gamma_ratio(2 * j + 2, alpha)
    return -total / 2


def inverse_power_bracket(alpha: int, m: int, s: int) -> Fraction:
    """a_{alpha s} / c_{alpha s}; on odd-positive slots it vanishes."""
    total = Fraction(2 ** alpha)
    for j in range(alpha // 2, alpha):
        shift = _reciprocal(Fraction(m - s, 2) + j + 1, "m/2 - s/2 + j + 1 at j=%d" % j)
        total += _sign(alpha - j) * shift * inverse_factorial(j) * inverse_factorial(alpha - 1 - j) \
            * gamma_ratio(2 * j + 2, alpha)
    return total


def lambda_order_ratio(alpha: int, m: int, s: int) -> Fraction:
    """a_{alpha s} / a_{ss}, zero where the denominator gamma has a pole."""
    return Fraction(math.factorial(alpha), math.factorial(s)) * gamma_ratio(Fraction(m + s + 2, 2), s - alpha)


def omega_order_ratio(alpha: int, m: int, s: int) -> Fraction:
    """Gamma(alpha+1) Gamma(m+1) / (Gamma(m-s+alpha+1) Gamma(s+1)), zero at the pole."""
    return Fraction(math.factorial(alpha) * math.factorial(m), math.factorial(s)) * inverse_factorial(m - s + alpha)


# Hardy and Hormander weights

def hardy_kernel_coeffs(k: Fraction, alpha: int) -> List[Tuple[int, Fraction]]:
    """
    Coefficients of sigma^j lambda^(-j-1) in the kernel that relates means in lambda
    to means in omega = lambda^(1/k).
    """
    k = Fraction(k)
    if k <= 0 or k == 1:
        raise ConfigurationError("change of variable exponent must be positive and different from 1, got %s" % k)
    if alpha < 1:
        raise ConfigurationError("order must be positive, got %d" % alpha)
    return [(j, _sign(alpha - j) * inverse_factorial(j) * inverse_factorial(alpha - 1 - j)
             * gamma_ratio(k * j + k, alpha))
            for j in range(alpha)]


def hormander_weights(k: int, alpha: int) -> Dict[int, Fraction]:
    """Coefficients b_beta of v^beta in (1 - (1 - v)^k)^alpha, beta = alpha..alpha k."""
    if k < 2:
        raise ConfigurationError("Hormander exponent must be an integer of at least 2, got %s" % k)
    if alpha < 1:
        raise ConfigurationError("order must be positive, got %d" % alpha)
    bracket = [Fraction(0)] + [Fraction(_sign(j - 1) * math.comb(k, j)) for j in range(1, k + 1)]
    power = [Fraction(1)]
    for _ in range(alpha):
        product = [Fraction(0)] * (len(power) + k)
        for i, left in enumerate(power):
            if left:
                for j, right in enumerate(bracket):
                    product[i + j] += left * right
        power = product
    return {beta: value for beta, value in enumerate(power) if beta >= alpha}


# Diagonal maps

def heat_from_lambda_diag(diag: DiagonalLambdaCoeffs) -> KernelExpansion:
    m = diag.m
    b = [a_ss * gamma_value(Fraction(m + s + 2, 2)) / math.factorial(s) for s, a_ss in enumerate(diag.a)]
    return KernelExpansion(m, "heat", tuple(b))


def lambda_diag_from_heat(expansion: KernelExpansion) -> DiagonalLambdaCoeffs:
    if expansion.kind != "heat":
        raise ConfigurationError("expected a heat expansion, got %s" % expansion.kind)
    m = expansion.m
    a = [determined(b_s, s) * math.factorial(s) / gamma_value(Fraction(m + s + 2, 2))
         for s, b_s in enumerate(expansion.coefficients)]
    return DiagonalLambdaCoeffs(m, tuple(a))


def omega_diag_from_lambda_diag(diag: DiagonalLambdaCoeffs) -> DiagonalOmegaCoeffs:
    m = diag.m
    c, d = [], []
    for s, a_ss in enumerate(diag.a):
        if odd_positive(m, s):
            c.append(UNDETERMINED)
            d.append(log_factor(s, m, s) * a_ss)
        else:
            c.append(power_bracket(s, m, s) * a_ss)
            d.append(ZERO)
    return DiagonalOmegaCoeffs(m, tuple(c), tuple(d))


def lambda_diag_from_omega_diag(diag: DiagonalOmegaCoeffs) -> DiagonalLambdaCoeffs:
    m = diag.m
    a = []
    for s, (c_ss, d_ss) in enumerate(zip(diag.c, diag.d)):
        if odd_positive(m, s):
            a.append(inverse_log_factor(s, m, s) * d_ss)
        else:
            a.append(inverse_power_bracket(s, m, s) * determined(c_ss, s))
    return DiagonalLambdaCoeffs(m, tuple(a))


def cylinder_from_omega_diag(diag: DiagonalOmegaCoeffs) -> KernelExpansion:
    m = diag.m
    e, f = [], []
    for s, (c_ss, d_ss) in enumerate(zip(diag.c, diag.d)):
        scale = Fraction(math.factorial(m), math.factorial(s))
        if odd_positive(m, s):
            e.append(scale * (c_ss + psi_eval(m + 1) * d_ss))
            f.append(-scale * d_ss)
        else:
            e.append(scale * c_ss)
            f.append(ZERO)
    return KernelExpansion(m, "cylinder", tuple(e), tuple(f))


def omega_diag_from_cylinder(expansion: KernelExpansion) -> DiagonalOmegaCoeffs:
    if expansion.kind != "cylinder":
        raise ConfigurationError("expected a cylinder expansion, got %s" % expansion.kind)
    m = expansion.m
    c, d = [], []
    for s, (e_s, f_s) in enumerate(zip(expansion.coefficients, expansion.logs)):
        scale = Fraction(math.factorial(s), math.factorial(m))
        if odd_positive(m, s):
            c.append(scale * (e_s + psi_eval(m + 1) * f_s))
            d.append(-scale * f_s)
        else:
            c.append(scale * e_s)
            d.append(ZERO)
    return DiagonalOmegaCoeffs(m, tuple(c), tuple(d))


# Tables over orders

def lambda_table_from_diag(diag: DiagonalLambdaCoeffs, alpha_max: int) -> CoeffTable:
    if alpha_max < diag.size:
        raise ConfigurationError("alpha_max=%d must cover the diagonal size %d" % (alpha_max, diag.size))
    rows = tuple(tuple(lambda_order_ratio(alpha, diag.m, s) * a_ss for s, a_ss in enumerate(diag.a))
                 for alpha in range(alpha_max + 1))
    return CoeffTable(diag.m, "lambda", a=rows)


def omega_table_from_diag(diag: DiagonalOmegaCoeffs, alpha_max: int) -> CoeffTable:
    m = diag.m
    c_rows, d_rows = [], []
    for alpha in range(alpha_max + 1):
        c_row, d_row = [], []
        for s, (c_ss, d_ss) in enumerate(zip(diag.c, diag.d)):
            ratio = omega_order_ratio(alpha, m, s)
            if not odd_positive(m, s):
                c_row.append(ratio * c_ss)
                d_row.append(ZERO)
            elif m - s + alpha >= 0:
                shift = psi_eval(m + 1) - psi_eval(m - s + alpha + 1)
                c_row.append(ratio * (c_ss + shift * d_ss))
                d_row.append(ratio * d_ss)
            else:
                # below the pole the c entry is carried by d alone
                gap = s - m - alpha
                factor = _sign(gap - 1) * Fraction(math.factorial(gap - 1) * math.factorial(alpha)
                                                   * math.factorial(m), math.factorial(s))
                c_row.append(factor * d_ss)
                d_row.append(ZERO)
        c_rows.append(tuple(c_row))
        d_rows.append(tuple(d_row))
    return CoeffTable(m, "omega", c=tuple(c_rows), d=tuple(d_rows))


def omega_full_from_lambda(table: CoeffTable, alpha: int) -> OmegaMeans:
    if table.kind != "lambda":
        raise ConfigurationError("expected a lambda table, got %s" % table.kind)
    if alpha > table.alpha_max:
        raise ConfigurationError("table stops at alpha=%d, order %d requested" % (table.alpha_max, alpha))
    m = table.m
    c, d = [], []
    for s in range(min(alpha, table.size) + 1):
        a_value = table.a[alpha][s]
        if odd_positive(m, s):
            c.append(UNDETERMINED)
            d.append(log_factor(alpha, m, s) * a_value)
        else:
            c.append(power_bracket(alpha, m, s) * a_value)
            d.append(ZERO)
    return OmegaMeans(m, alpha, tuple(c), tuple(d))


def lambda_full_from_omega(means: OmegaMeans, alpha: Optional[int] = None) -> Tuple[ExactScalar, ...]:
    alpha = means.alpha if alpha is None else alpha
    m = means.m
    out = []
    for s, (c_value, d_value) in enumerate(zip(means.c, means.d)):
        if s > alpha:
            break
        if odd_positive(m, s):
            out.append(inverse_log_factor(alpha, m, s) * d_value)
        else:
            out.append(inverse_power_bracket(alpha, m, s) * determined(c_value, s))
    return tuple(out)


def rescale_log_scale(means: OmegaMeans, log_kappa: ExactScalar) -> OmegaMeans:
    """
    Re-express the means against ln(kappa omega) instead of ln omega: the d
    coefficients are unchanged and each c shifts by -ln(kappa) d.
    """
    c = tuple(value if value is UNDETERMINED or d_value.is_zero() else value - log_kappa * d_value
              for value, d_value in zip(means.c, means.d))
    return OmegaMeans(means.m, means.alpha, c, means.d)


# Consistency of the two directions

@dataclass(frozen=True)
class ConsistencyReport:
    alpha: int
    m: int
    s: int
    d_branch_product: Optional[Fraction] = None
    c_branch_product: Optional[Fraction] = None
    odd_branch_bracket: Optional[Fraction] = None

    def expected(self) -> Dict[str, Fraction]:
        if odd_positive(self.m, self.s):
            return {"d_branch_product": Fraction(1), "odd_branch_bracket": Fraction(0)}
        return {"c_branch_product": Fraction(1)}

    @property
    def passed(self) -> bool:
        return all(getattr(self, name) == value for name, value in self.expected().items())


def verify_consistency(alpha: int, m: int, s: int) -> ConsistencyReport:
    """
    Evaluates the products of the forward and backward factors. On odd-positive
    slots the log branch must give 1 and the power bracket 0; elsewhere the power
    branch must give 1.
    """
    if alpha < 1 or m < 1 or s < 0:
        raise ConfigurationError("need alpha >= 1, m >= 1 and s >= 0, got (%d, %d, %d)" % (alpha, m, s))
    if odd_positive(m, s):
        if m - s + alpha < 0:
            raise PoleError("log factor is undefined for s > m + alpha (alpha=%d, m=%d, s=%d)" % (alpha, m, s))
        return ConsistencyReport(alpha, m, s,
                                 d_branch_product=inverse_log_factor(alpha, m, s) * log_factor(alpha, m, s),
                                 odd_branch_bracket=inverse_power_bracket(alpha, m, s))
    return ConsistencyReport(alpha, m, s,
                             c_branch_product=inverse_power_bracket(alpha, m, s) * power_bracket(alpha, m, s))
