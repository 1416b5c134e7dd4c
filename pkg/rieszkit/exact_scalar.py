"""
Exact scalars in the ring Q[pi^(1/2), pi^(-1/2), gamma, ln 2], together with the
gamma, digamma, Pochhammer and Bernoulli evaluations that produce them.

Every monomial is keyed by ``(k, a, b)`` meaning ``pi^(k/2) * gamma^a * ln2^b``
with ``a`` and ``b`` restricted to 0 or 1. A product that would need a higher
power of gamma or ln 2 raises ``DegreeError``.
"""
import logging
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Tuple, Union

import numpy as np

from rieszkit.checks import DegreeError, PoleError

logger = logging.getLogger(__name__)

Key = Tuple[int, int, int]
Number = Union[int, Fraction]

_PI_FACTOR = re.compile(r"^pi\^\((-?\d+)(/2)?\)$")
_RATIONAL = re.compile(r"^\d+(/\d+)?$")


def _split_terms(text: str) -> List[str]:
    """Splits a sum at top-level signs, folding runs of signs into the term that follows."""
    terms, current, depth = [], "", 0
    for char in text.replace(" ", ""):
        depth += {"(": 1, ")": -1}.get(char, 0)
        if depth == 0 and char in "+-" and current not in ("", "-"):
            terms.append(current)
            current = ""
        if char in "+-" and current in ("", "-"):
            current = "-" if (char == "-") != (current == "-") else ""
        else:
            current += char
    if current in ("", "-") or depth:
        raise ValueError("malformed exact scalar %r" % text)
    return terms + [current]


class ExactScalar:
    """
    An immutable element of Q[pi^(+-1/2), gamma, ln 2] kept in canonical form:
    no zero coefficients are stored, so structural equality is value equality.
    """
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Key, Number] = None):
        clean: Dict[Key, Fraction] = {}
        for (k, a, b), value in (terms or {}).items():
            if a not in (0, 1) or b not in (0, 1):
                raise DegreeError("monomial pi^(%d/2) gamma^%d ln2^%d is outside the scalar ring" % (k, a, b))
            q = Fraction(value)
            if q != 0:
                clean[(int(k), a, b)] = q
        self._terms = clean

    @classmethod
    def coerce(cls, value: Union["ExactScalar", Number]) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({(0, 0, 0): value})
        raise TypeError("cannot use %r as an exact scalar" % (value,))

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(key == (0, 0, 0) for key in self._terms)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("%s is not rational" % self)
        return self._terms.get((0, 0, 0), Fraction(0))

    def inverse(self) -> "ExactScalar":
        """Only single powers of pi (times a rational) are invertible in this ring."""
        if len(self._terms) != 1:
            raise ZeroDivisionError("cannot invert %s" % self)
        (k, a, b), q = next(iter(self._terms.items()))
        if a or b:
            raise ZeroDivisionError("cannot invert %s" % self)
        return ExactScalar({(-k, 0, 0): 1 / q})

    def __add__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for key, q in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + q
        return ExactScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar({key: -q for key, q in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[Key, Fraction] = {}
        for (k1, a1, b1), q1 in self._terms.items():
            for (k2, a2, b2), q2 in other._terms.items():
                key = (k1 + k2, a1 + a2, b1 + b2)
                if key[1] > 1 or key[2] > 1:
                    raise DegreeError("product of %s and %s needs gamma^2 or (ln 2)^2" % (self, other))
                out[key] = out.get(key, Fraction(0)) + q1 * q2
        return ExactScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of %s by zero" % self)
            return ExactScalar({key: q / other for key, q in self._terms.items()})
        if isinstance(other, ExactScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        total = 0.0
        for (k, a, b), q in self._terms.items():
            total += float(q) * math.pi ** (k / 2) * np.euler_gamma ** a * math.log(2) ** b
        return total

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (k, a, b), q in self.items():
            factors = [str(q)]
            if k:
                factors.append("pi^(%d/2)" % k)
            if a:
                factors.append("gamma")
            if b:
                factors.append("ln2")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "ExactScalar":
        """
        Reads ``to_text`` output. Spacing is free, terms may be joined by ``-`` and
        ``pi`` may be bare or ``pi^(n)``: "1/2*pi^(-1/2) - gamma" parses.
        """
        terms: Dict[Key, Fraction] = {}
        for part in _split_terms(text):
            q = Fraction(-1 if part.startswith("-") else 1)
            k = a = b = 0
            for factor in part.lstrip("-").split("*"):
                match = _PI_FACTOR.match(factor)
                if _RATIONAL.match(factor):
                    if Fraction(factor.partition("/")[2] or 1) == 0:
                        raise ValueError("zero denominator in exact scalar %r" % text)
                    q *= Fraction(factor)
                elif match:
                    k += int(match.group(1)) * (1 if match.group(2) else 2)
                elif factor == "pi":
                    k += 2
                elif factor == "gamma":
                    a += 1
                elif factor == "ln2":
                    b += 1
                else:
                    raise ValueError("unknown factor %r in exact scalar %r" % (factor, text))
            if a > 1 or b > 1:
                raise ValueError("%r is outside the scalar ring" % part)
            terms[(k, a, b)] = terms.get((k, a, b), Fraction(0)) + q
        return cls(terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return "ExactScalar(%r)" % self.to_text()


ZERO = ExactScalar()
ONE = ExactScalar.coerce(1)
EULER_GAMMA = ExactScalar({(0, 1, 0): 1})
LN2 = ExactScalar({(0, 0, 1): 1})


def rational(value: Number) -> ExactScalar:
    return ExactScalar.coerce(value)


def pi_power(k: int, coefficient: Number = 1) -> ExactScalar:
    """``coefficient * pi^(k/2)``"""
    return ExactScalar({(k, 0, 0): coefficient})


class PoleMarker:
    """Returned by ``gamma_half`` at nonpositive integers."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "pole"


POLE = PoleMarker()


def gamma_half(k: int) -> Union[ExactScalar, PoleMarker]:
    """Gamma(k/2)."""
    if k % 2 == 0:
        if k <= 0:
            return POLE
        return rational(math.factorial(k // 2 - 1))
    n = (k - 1) // 2
    if n >= 0:
        coefficient = Fraction(math.factorial(2 * n), 4 ** n * math.factorial(n))
    else:
        j = -n
        coefficient = Fraction((-4) ** j * math.factorial(j), math.factorial(2 * j))
    return pi_power(1, coefficient)


def gamma_value(x: Number) -> ExactScalar:
    """Gamma(x) for positive 2x integer; poles raise."""
    x = Fraction(x)
    if (2 * x).denominator != 1:
        raise ValueError("gamma is only evaluated exactly at integers and half-integers, got %s" % x)
    value = gamma_half(int(2 * x))
    if value is POLE:
        raise PoleError("gamma has a pole at %s" % x)
    return value


def pochhammer(x: Number, n: int) -> Fraction:
    """Rising factorial x(x+1)...(x+n-1)."""
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative, got %d" % n)
    x = Fraction(x)
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def gamma_ratio(x: Number, n: int) -> Fraction:
    """
    Gamma(x) / Gamma(x - n), always rational.

    For n >= 0 this is the product (x-1)(x-2)...(x-n), which is zero exactly when the
    denominator gamma has a pole and the numerator does not. For n < 0 it is the
    reciprocal of x(x+1)...(x-n-1), and a vanishing product means a pole in the
    numerator only, which raises ``PoleError``.
    """
    x = Fraction(x)
    if n >= 0:
        out = Fraction(1)
        for i in range(1, n + 1):
            out *= x - i
        return out
    product = pochhammer(x, -n)
    if product == 0:
        raise PoleError("Gamma(%s)/Gamma(%s) has a pole in the numerator" % (x, x - n))
    return 1 / product


def inverse_factorial(n: int) -> Fraction:
    """1/n!, with 1/Gamma at a pole taken as zero for negative n."""
    if n < 0:
        return Fraction(0)
    return Fraction(1, math.factorial(n))


def psi_eval(p: Number) -> ExactScalar:
    """Digamma at a positive integer or half-odd-integer."""
    p = Fraction(p)
    if p <= 0 or (2 * p).denominator != 1:
        raise ValueError("digamma is evaluated exactly only at positive integers and half-integers, got %s" % p)
    if p.denominator == 1:
        harmonic = sum((Fraction(1, k) for k in range(1, int(p))), Fraction(0))
        return rational(harmonic) - EULER_GAMMA
    n = int(p - Fraction(1, 2))
    odd_sum = sum((Fraction(2, 2 * k - 1) for k in range(1, n + 1)), Fraction(0))
    return rational(odd_sum) - EULER_GAMMA - 2 * LN2


@lru_cache(maxsize=None)
def _bernoulli_table(s: int) -> Tuple[Fraction, ...]:
    table = [Fraction(1)]
    for n in range(1, s + 1):
        acc = sum((math.comb(n + 1, j) * table[j] for j in range(n)), Fraction(0))
        table.append(-acc / (n + 1))
    return tuple(table)


def bernoulli(s: int) -> Fraction:
    """
    Bernoulli numbers in the convention of z/2 coth(z/2) = sum B_s z^s / s!,
    so B_1 = 0 and every odd B_s vanishes.
    """
    if s < 0:
        raise ValueError("bernoulli index must be nonnegative, got %d" % s)
    if s % 2 == 1:
        return Fraction(0)
    return _bernoulli_table(s)[s]


def gamma_psi_residue(n: int) -> Fraction:
    """Limit of psi(eps - n) / Gamma(eps - n) as eps -> 0."""
    if n < 0:
        raise ValueError("residue index must be nonnegative, got %d" % n)
    return Fraction((-1) ** ((n - 1) % 2) * math.factorial(n))
