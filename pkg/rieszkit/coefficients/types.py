"""
Coefficient containers shared by the transforms and the pipelines.

Index conventions: ``s`` runs over expansion orders starting at 0, ``m`` is the
dimension, ``alpha`` is the Riesz-mean order. A slot is "odd positive" when
``s - m`` is odd and positive; those are the slots that carry logarithms on the
omega side and whose ``c`` coefficients cannot be recovered from lambda means.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from rieszkit.checks import ConfigurationError, UndeterminedCoefficientError
from rieszkit.exact_scalar import ExactScalar, ZERO


class Undetermined:
    """A coefficient the lambda-mean asymptotics cannot fix. Arithmetic stays undetermined."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def _absorb(self, other):
        return self

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = __truediv__ = _absorb

    def __neg__(self):
        return self

    def __repr__(self):
        return "undetermined"

    def __str__(self):
        return "undetermined"


UNDETERMINED = Undetermined()

Coefficient = Union[ExactScalar, Undetermined]


def is_undetermined(value) -> bool:
    return value is UNDETERMINED


def odd_positive(m: int, s: int) -> bool:
    return s > m and (s - m) % 2 == 1


def determined(value: Coefficient, s: int, context: str = "") -> ExactScalar:
    if value is UNDETERMINED:
        raise UndeterminedCoefficientError(s, context)
    return value


def _scalars(values: Sequence) -> Tuple[Coefficient, ...]:
    return tuple(value if value is UNDETERMINED else ExactScalar.coerce(value) for value in values)


def _check_dimension(m: int):
    if m < 1:
        raise ConfigurationError("dimension m must be at least 1, got %d" % m)


@dataclass(frozen=True)
class DiagonalLambdaCoeffs:
    """a_ss, s = 0..S."""
    m: int
    a: Tuple[ExactScalar, ...]

    def __post_init__(self):
        _check_dimension(self.m)
        object.__setattr__(self, "a", _scalars(self.a))
        for s, value in enumerate(self.a):
            determined(value, s, "lambda-mean coefficients are always determined")

    @property
    def size(self) -> int:
        return len(self.a) - 1


@dataclass(frozen=True)
class DiagonalOmegaCoeffs:
    """c_ss and d_ss, s = 0..S; d vanishes off the odd-positive slots."""
    m: int
    c: Tuple[Coefficient, ...]
    d: Tuple[ExactScalar, ...]

    def __post_init__(self):
        _check_dimension(self.m)
        object.__setattr__(self, "c", _scalars(self.c))
        object.__setattr__(self, "d", _scalars(self.d))
        if len(self.c) != len(self.d):
            raise ConfigurationError("c and d must have the same length")
        for s, (c_ss, d_ss) in enumerate(zip(self.c, self.d)):
            determined(d_ss, s, "log coefficients are always determined")
            if not odd_positive(self.m, s):
                if not d_ss.is_zero():
                    raise ConfigurationError("d_ss must vanish at s=%d for m=%d" % (s, self.m))
                determined(c_ss, s, "only odd-positive slots may be undetermined")

    @property
    def size(self) -> int:
        return len(self.c) - 1


@dataclass(frozen=True)
class KernelExpansion:
    """
    Heat coefficients b_s of t^(-m/2+s/2), or cylinder coefficients e_s of t^(-m+s)
    together with log coefficients f_s of t^(-m+s) ln t.
    """
    m: int
    kind: str
    coefficients: Tuple[Coefficient, ...]
    logs: Tuple[ExactScalar, ...] = ()

    def __post_init__(self):
        _check_dimension(self.m)
        if self.kind not in ("heat", "cylinder"):
            raise ConfigurationError("kernel expansion kind must be heat or cylinder, got %r" % self.kind)
        object.__setattr__(self, "coefficients", _scalars(self.coefficients))
        logs = _scalars(self.logs) if self.logs else tuple(ZERO for _ in self.coefficients)
        object.__setattr__(self, "logs", logs)
        if len(logs) != len(self.coefficients):
            raise ConfigurationError("log slots must match the coefficient count")
        for s, (value, log) in enumerate(zip(self.coefficients, logs)):
            determined(log, s, "log coefficients are always determined")
            allowed = self.kind == "cylinder" and odd_positive(self.m, s)
            if not allowed and not log.is_zero():
                raise ConfigurationError("%s expansion has no log slot at s=%d for m=%d" % (self.kind, s, self.m))
            if value is UNDETERMINED and not allowed:
                raise ConfigurationError("%s coefficient at s=%d cannot be undetermined" % (self.kind, s))

    @property
    def size(self) -> int:
        return len(self.coefficients) - 1

    def power(self, s: int) -> Fraction:
        if self.kind == "heat":
            return Fraction(s - self.m, 2)
        return Fraction(s - self.m)


@dataclass(frozen=True)
class KernelTerm:
    """``coefficient * t^power * (ln t if has_log)``"""
    power: Fraction
    has_log: bool
    coefficient: ExactScalar


@dataclass(frozen=True)
class OmegaMeans:
    """c_{alpha s}, d_{alpha s} for one order alpha, s = 0..S."""
    m: int
    alpha: int
    c: Tuple[Coefficient, ...]
    d: Tuple[ExactScalar, ...]

    def __post_init__(self):
        _check_dimension(self.m)
        if len(self.c) != len(self.d):
            raise ConfigurationError("got %d c and %d d coefficients" % (len(self.c), len(self.d)))
        object.__setattr__(self, "c", _scalars(self.c))
        object.__setattr__(self, "d", _scalars(self.d))

    @property
    def undetermined(self) -> frozenset:
        return frozenset(s for s, value in enumerate(self.c) if value is UNDETERMINED)


@dataclass(frozen=True)
class CoeffTable:
    """
    Dense table of mean coefficients, rows alpha = 0..alpha_max and columns s = 0..S.
    A lambda table fills ``a``; an omega table fills ``c`` and ``d``. The recursions
    linking neighbouring orders are checked on construction.
    """
    m: int
    kind: str
    a: Tuple[Tuple[ExactScalar, ...], ...] = ()
    c: Tuple[Tuple[Coefficient, ...], ...] = ()
    d: Tuple[Tuple[ExactScalar, ...], ...] = ()

    def __post_init__(self):
        _check_dimension(self.m)
        if self.kind == "lambda":
            object.__setattr__(self, "a", tuple(_scalars(row) for row in self.a))
            self._check_lambda_recursion()
        elif self.kind == "omega":
            object.__setattr__(self, "c", tuple(_scalars(row) for row in self.c))
            object.__setattr__(self, "d", tuple(_scalars(row) for row in self.d))
            self._check_omega_recursion()
        else:
            raise ConfigurationError("table kind must be lambda or omega, got %r" % self.kind)

    @property
    def alpha_max(self) -> int:
        rows = self.a if self.kind == "lambda" else self.c
        return len(rows) - 1

    @property
    def size(self) -> int:
        rows = self.a if self.kind == "lambda" else self.c
        return len(rows[0]) - 1

    def row(self, alpha: int) -> OmegaMeans:
        if self.kind != "omega":
            raise ConfigurationError("only omega tables have (c, d) rows")
        return OmegaMeans(self.m, alpha, self.c[alpha], self.d[alpha])

    def _check_lambda_recursion(self):
        for alpha in range(1, len(self.a)):
            for s, value in enumerate(self.a[alpha]):
                expected = Fraction(self.m - s + 2 * alpha, 2 * alpha) * value
                if self.a[alpha - 1][s] != expected:
                    raise ConfigurationError("lambda table breaks the order recursion at alpha=%d, s=%d"
                                             % (alpha, s))

    def _check_omega_recursion(self):
        for alpha in range(1, len(self.c)):
            for s in range(len(self.c[alpha])):
                factor = Fraction(self.m - s + alpha, alpha)
                c_row, d_row = self.c[alpha][s], self.d[alpha][s]
                expected = ZERO if factor == 0 else factor * c_row
                if odd_positive(self.m, s):
                    expected = expected + d_row / alpha
                previous = self.c[alpha - 1][s]
                if (expected is UNDETERMINED) != (previous is UNDETERMINED) or \
                        (expected is not UNDETERMINED and previous != expected):
                    raise ConfigurationError("omega table breaks the c recursion at alpha=%d, s=%d" % (alpha, s))
                if self.d[alpha - 1][s] != factor * d_row:
                    raise ConfigurationError("omega table breaks the d recursion at alpha=%d, s=%d" % (alpha, s))
