"""
Assembly of kernel expansions directly from Riesz-mean expansions.

The heat kernel is rebuilt from omega means and the cylinder kernel from lambda
means, each through the single term of the mean lemma that survives as the
upper limit goes to infinity. Both return linear forms in the mean
coefficients, so the cancellations can be checked symbolically before any
numbers are substituted.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from rieszkit.checks import CancellationError, ConfigurationError
from rieszkit.coefficients.types import UNDETERMINED, CoeffTable, KernelExpansion, KernelTerm, Undetermined, \
    odd_positive
from rieszkit.exact_scalar import ExactScalar, ZERO, gamma_value, psi_eval

logger = logging.getLogger(__name__)

Symbol = Tuple[str, int, int]
LinearForm = Dict[Symbol, ExactScalar]
TermKey = Tuple[Fraction, bool]

_MOMENT_SCALE = {"lambda": Fraction(1), "omega": Fraction(1, 2), "omega-cylinder": Fraction(1)}


def moment_map(variable: str, p, with_log: bool = False) -> Tuple[KernelTerm, ...]:
    """
    Exact Laplace-type moments:
      lambda:          int e^{-lambda t} lambda^{p-1} (ln lambda) d lambda
      omega:           int e^{-omega^2 t} omega^{2p-1} (ln omega) d omega
      omega-cylinder:  int e^{-omega t} omega^{p-1} (ln omega) d omega
    A log moment gives a plain term carrying psi(p) and a ln t term.
    """
    if variable not in _MOMENT_SCALE:
        raise ConfigurationError("unknown moment variable %r" % variable)
    p = Fraction(p)
    if p <= 0:
        raise ConfigurationError("moment exponent must be positive, got %s" % p)
    scale = _MOMENT_SCALE[variable]
    base = gamma_value(p)
    if not with_log:
        return (KernelTerm(-p, False, scale * base),)
    if variable == "omega":
        scale = scale / 2
    return (KernelTerm(-p, False, scale * base * psi_eval(p)),
            KernelTerm(-p, True, -scale * base))


def gaussian_derivative_table(j: int) -> Dict[Tuple[int, int], Fraction]:
    """
    d^j/d omega^j e^{-omega^2 t} = e^{-omega^2 t} sum z omega^a t^b, keyed by (a, b).
    """
    table = {(0, 0): Fraction(1)}
    for _ in range(j):
        following: Dict[Tuple[int, int], Fraction] = {}
        for (a, b), z in table.items():
            if a:
                following[(a - 1, b)] = following.get((a - 1, b), Fraction(0)) + a * z
            following[(a + 1, b + 1)] = following.get((a + 1, b + 1), Fraction(0)) - 2 * z
        table = {key: value for key, value in following.items() if value}
    return table


def sqrt_exp_derivative_table(j: int) -> Dict[int, Fraction]:
    """
    d^j/d lambda^j e^{-t sqrt(lambda)} = e^{-t sqrt(lambda)} sum_i y_i t^i lambda^{-j+i/2}.
    """
    y = {0: Fraction(1)}
    for order in range(j):
        following: Dict[int, Fraction] = {}
        for i in range(order + 2):
            value = (Fraction(i, 2) - order) * y.get(i, Fraction(0)) - y.get(i - 1, Fraction(0)) / 2
            if value:
                following[i] = value
        y = following
    return y


def _add(form: LinearForm, symbol: Symbol, value: ExactScalar):
    form[symbol] = form.get(symbol, ZERO) + value


def heat_terms_from_omega_means(m: int, alpha: int) -> Dict[TermKey, LinearForm]:
    """
    The heat kernel as a combination of t-powers whose coefficients are linear in
    c_{alpha s} and d_{alpha s}, s = 0..alpha. Log terms and the undetermined c
    coefficients must drop out.
    """
    if m < 1 or alpha < 0:
        raise ConfigurationError("need m >= 1 and alpha >= 0")
    prefactor = Fraction((-1) ** (alpha + 1), math.factorial(alpha))
    derivative = gaussian_derivative_table(alpha + 1)
    terms: Dict[TermKey, LinearForm] = {}
    for s in range(alpha + 1):
        symbols = [(("c", alpha, s), False)]
        if odd_positive(m, s):
            symbols.append((("d", alpha, s), True))
        for (omega_power, t_power), z in sorted(derivative.items()):
            p = Fraction(alpha + omega_power + m - s + 1, 2)
            for symbol, with_log in symbols:
                for term in moment_map("omega", p, with_log):
                    form = terms.setdefault((term.power + t_power, term.has_log), {})
                    _add(form, symbol, prefactor * z * term.coefficient)

    cleaned: Dict[TermKey, LinearForm] = {}
    for key, form in terms.items():
        form = {symbol: value for symbol, value in form.items() if not value.is_zero()}
        if not form:
            continue
        if key[1]:
            raise CancellationError("ln t survives at t^%s with %s" % (key[0], render_form(form)))
        for name, _, s in form:
            if name == "c" and odd_positive(m, s):
                raise CancellationError("undetermined c_%d%d reaches the heat kernel" % (alpha, s))
        cleaned[key] = form
    return cleaned


def heat_pipeline_from_omega(table: CoeffTable, alpha: int) -> KernelExpansion:
    if table.kind != "omega":
        raise ConfigurationError("expected an omega table, got %s" % table.kind)
    if alpha > table.alpha_max:
        raise ConfigurationError("table stops at alpha=%d, order %d requested" % (table.alpha_max, alpha))
    m = table.m
    size = min(alpha, table.size)
    b = [ZERO] * (size + 1)
    row = table.row(alpha)
    for form in heat_terms_from_omega_means(m, alpha).values():
        for (name, _, s), coefficient in form.items():
            if s > size:
                continue
            value = row.c[s] if name == "c" else row.d[s]
            b[s] = b[s] + coefficient * value
    return KernelExpansion(m, "heat", tuple(b))


CylinderSlot = Tuple[Union[ExactScalar, Undetermined], Fraction]


def cylinder_terms_from_lambda_means(m: int, alpha: int) -> Dict[int, CylinderSlot]:
    """
    Multipliers of a_{alpha s} in the cylinder kernel: for each s the coefficient of
    t^{s-m} and of t^{s-m} ln t. Divergent small-omega moments contribute their finite
    part; on odd-positive slots the t^{s-m} coefficient also collects contributions
    from the low end of the spectrum and is reported as undetermined.
    """
    if m < 1 or alpha < 0:
        raise ConfigurationError("need m >= 1 and alpha >= 0")
    prefactor = Fraction(2 * (-1) ** (alpha + 1), math.factorial(alpha))
    y = sqrt_exp_derivative_table(alpha + 1)
    slots: Dict[int, CylinderSlot] = {}
    for s in range(alpha + 1):
        constant, log = ZERO, Fraction(0)
        for i, y_i in sorted(y.items()):
            weight = prefactor * y_i
            p = i + m - s
            if p > 0:
                constant = constant + weight * math.factorial(p - 1)
            else:
                n = 1 - p
                finite_part = Fraction((-1) ** (n - 1), math.factorial(n - 1))
                constant = constant + weight * finite_part * psi_eval(n)
                log -= weight * finite_part
        if odd_positive(m, s):
            slots[s] = (UNDETERMINED, log)
        else:
            if log != 0 or not constant.is_rational():
                raise CancellationError("ln t survives at t^%d for m=%d, alpha=%d" % (s - m, m, alpha))
            slots[s] = (constant, Fraction(0))
    return slots


def cylinder_pipeline_from_lambda(table: CoeffTable, alpha: int) -> KernelExpansion:
    if table.kind != "lambda":
        raise ConfigurationError("expected a lambda table, got %s" % table.kind)
    if alpha > table.alpha_max:
        raise ConfigurationError("table stops at alpha=%d, order %d requested" % (table.alpha_max, alpha))
    m = table.m
    size = min(alpha, table.size)
    slots = cylinder_terms_from_lambda_means(m, alpha)
    e, f = [], []
    for s in range(size + 1):
        multiplier, log = slots[s]
        a_value = table.a[alpha][s]
        e.append(UNDETERMINED if multiplier is UNDETERMINED else multiplier * a_value)
        f.append(log * a_value)
    return KernelExpansion(m, "cylinder", tuple(e), tuple(f))


def render_form(form: LinearForm) -> str:
    parts = ["(%s) %s_%d%d" % (value, name, alpha, s) for (name, alpha, s), value in sorted(form.items())]
    return " + ".join(parts) if parts else "0"


def render_heat_terms(terms: Dict[TermKey, LinearForm]) -> str:
    lines: List[str] = []
    for (power, has_log), form in sorted(terms.items()):
        lines.append("[%s] t^(%s)%s" % (render_form(form), power, " ln t" if has_log else ""))
    return " + ".join(lines) if lines else "0"


def render_cylinder_terms(m: int, alpha: int, slots: Dict[int, CylinderSlot]) -> str:
    lines: List[str] = []
    for s, (multiplier, log) in sorted(slots.items()):
        if multiplier is UNDETERMINED:
            lines.append("[undetermined] t^(%d)" % (s - m))
        elif not multiplier.is_zero():
            lines.append("(%s) a_%d%d t^(%d)" % (multiplier, alpha, s, s - m))
        if log:
            lines.append("(%s) a_%d%d t^(%d) ln t" % (log, alpha, s, s - m))
    return " + ".join(lines) if lines else "0"
