"""
Exception types raised across rieszkit. Configuration problems reuse
allennlp's ``ConfigurationError`` so that scripts can treat them uniformly.
"""
import numpy as np
from allennlp.common.checks import ConfigurationError


class UnsupportedObservableError(ConfigurationError):
    """A (manifold, observable) pair that has no measure or table."""


class PoleError(ZeroDivisionError):
    """A gamma function or Pochhammer denominator hit a pole."""


class DegreeError(ArithmeticError):
    """A product of exact scalars would contain gamma^2 or (ln 2)^2."""


class UndeterminedCoefficientError(ValueError):
    def __init__(self, s: int, context: str = ""):
        self.s = s
        message = "coefficient at s=%d is undetermined: omega-mean coefficients with s-m odd and " \
                  "positive cannot be recovered from lambda-mean asymptotics" % s
        if context:
            message += " (" + context + ")"
        super().__init__(message)


class CancellationError(ArithmeticError):
    """A term that must cancel in a kernel pipeline survived."""


class QuadratureError(RuntimeError):
    pass


class TruncationError(RuntimeError):
    pass


class RankDeficientError(np.linalg.LinAlgError):
    pass
