from rieszkit.manifolds.manifold import Manifold, Observable
from rieszkit.manifolds.line import Line
from rieszkit.manifolds.half_line import HalfLine
from rieszkit.manifolds.circle import Circle
from rieszkit.manifolds.interval import Interval
from rieszkit.manifolds.consistency import (
    DecayReport, EulerMaclaurinPrediction, KernelComparison, MeanComparison, compare_kernel_expansion, compare_means,
    euler_maclaurin_prediction, expected_coeffs, offdiagonal_decay_check, spectral_measure, trapezoid_defect,
)
