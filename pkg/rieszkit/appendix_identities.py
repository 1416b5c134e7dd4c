"""
Exact checks of the product identity behind the consistency relations: two finite
sums in a free rational parameter ``z`` (``z = m - s`` in the coefficient maps),
their Pochhammer closed forms, and the terminating 3F2 transformation used to
derive them.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from rieszkit.checks import ConfigurationError, PoleError
from rieszkit.exact_scalar import gamma_ratio, inverse_factorial, pochhammer

logger = logging.getLogger(__name__)


def _check_order(alpha: int):
    if alpha < 1:
        raise ConfigurationError("the factor sums need alpha >= 1, got %d" % alpha)


def _quotient(numerator: Fraction, denominator: Fraction, what: str) -> Fraction:
    if denominator == 0:
        raise PoleError(what)
    return numerator / denominator


def first_factor_sum(alpha: int, z) -> Fraction:
    _check_order(alpha)
    z = Fraction(z)
    total = Fraction(0)
    for j in range(alpha // 2, alpha):
        sign = -1 if (alpha - j) % 2 else 1
        term = sign * inverse_factorial(j) * inverse_factorial(alpha - 1 - j) * gamma_ratio(2 * j + 2, alpha)
        total += _quotient(term, z / 2 + j + 1, "z/2 + %d vanishes at z=%s" % (j + 1, z))
    return total


def first_factor_closed(alpha: int, z) -> Fraction:
    _check_order(alpha)
    z = Fraction(z)
    scale = Fraction(2 ** alpha)
    if alpha % 2 == 0:
        length = alpha // 2
        top = pochhammer(z / 2 + Fraction(1, 2), length)
        bottom = pochhammer(z / 2 + Fraction(alpha, 2) + 1, length)
    else:
        length = (alpha + 1) // 2
        top = pochhammer(z / 2 + Fraction(1, 2), length)
        bottom = pochhammer(z / 2 + Fraction(alpha, 2) + Fraction(1, 2), length)
    return scale * _quotient(top, bottom, "closed form denominator vanishes at z=%s" % z) - scale


def second_factor_sum(alpha: int, z) -> Fraction:
    _check_order(alpha)
    z = Fraction(z)
    total = Fraction(0)
    for j in range(0, alpha, 2):
        sign = -1 if (alpha - j) % 2 else 1
        term = sign * inverse_factorial(j) * inverse_factorial(alpha - 1 - j) \
            * gamma_ratio(Fraction(j + 1, 2), alpha)
        total += _quotient(term, z + j + 1, "z + %d vanishes at z=%s" % (j + 1, z))
    return total


def second_factor_closed(alpha: int, z) -> Fraction:
    _check_order(alpha)
    z = Fraction(z)
    scale = Fraction(1, 2 ** alpha)
    if alpha % 2 == 0:
        length = alpha // 2
        top = pochhammer(z / 2 + Fraction(alpha, 2) + 1, length)
    else:
        length = (alpha + 1) // 2
        top = pochhammer(z / 2 + Fraction(alpha, 2) + Fraction(1, 2), length)
    bottom = pochhammer(z / 2 + Fraction(1, 2), length)
    return scale * _quotient(top, bottom, "closed form denominator vanishes at z=%s" % z) - scale


def verify_A1(alpha: int, z) -> Fraction:
    """Product of the two completed brackets; equals 1 away from poles."""
    return (first_factor_sum(alpha, z) + 2 ** alpha) * (second_factor_sum(alpha, z) + Fraction(1, 2 ** alpha))


@dataclass(frozen=True)
class HypergeometricSpec:
    """3F2(numerator; denominator; 1) terminated by a numerator parameter equal to -n."""
    numerator: Tuple[Fraction, Fraction, Fraction]
    denominator: Tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(Fraction(value) for value in self.numerator))
        object.__setattr__(self, "denominator", tuple(Fraction(value) for value in self.denominator))
        if len(self.numerator) != 3 or len(self.denominator) != 2:
            raise ConfigurationError("3F2 needs three numerator and two denominator parameters")
        length = self.length
        for value in self.denominator:
            if pochhammer(value, length) == 0:
                raise ConfigurationError("denominator parameter %s vanishes within the %d terms" % (value, length))

    @property
    def length(self) -> int:
        lengths = [int(-value) for value in self.numerator if value.denominator == 1 and value <= 0]
        if not lengths:
            raise ConfigurationError("3F2 with numerator %s does not terminate" % (self.numerator,))
        return min(lengths)


def f32_terminating(spec: HypergeometricSpec) -> Fraction:
    total = Fraction(0)
    for k in range(spec.length + 1):
        top = math.prod(pochhammer(value, k) for value in spec.numerator)
        bottom = math.prod(pochhammer(value, k) for value in spec.denominator) * math.factorial(k)
        total += top / bottom
    return total


def transform_check(a, b, n: int, e, f) -> Tuple[Fraction, Fraction]:
    """
    Both sides of
      3F2(a, b, -n; e, f; 1)
        = (e-a)_n (f-a)_n / ((e)_n (f)_n) 3F2(1-s, a, -n; 1+a-f-n, 1+a-e-n; 1),
    with s = e + f - a - b + n.
    """
    a, b, e, f = (Fraction(value) for value in (a, b, e, f))
    if n < 0:
        raise ConfigurationError("n must be nonnegative, got %d" % n)
    lhs = f32_terminating(HypergeometricSpec((a, b, Fraction(-n)), (e, f)))
    bottom = pochhammer(e, n) * pochhammer(f, n)
    if bottom == 0:
        raise ConfigurationError("prefactor denominator vanishes for e=%s, f=%s, n=%d" % (e, f, n))
    s = e + f - a - b + n
    prefactor = pochhammer(e - a, n) * pochhammer(f - a, n) / bottom
    rhs = prefactor * f32_terminating(HypergeometricSpec((1 - s, a, Fraction(-n)), (1 + a - f - n, 1 + a - e - n)))
    return lhs, rhs
