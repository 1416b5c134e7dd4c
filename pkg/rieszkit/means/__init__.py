from rieszkit.means.measure import (
    Density, Envelope, SpectralMeasure, atomic_measure, change_variable, constant_density, load_measure,
    measure_from_dict,
)
from rieszkit.means.weights import (
    ExponentialWeight, GaussianWeight, KernelWeight, PolynomialWeight, SqrtExponentialWeight, weight_from_name,
)
from rieszkit.means.fitting import FitResult, FitSpec, MeanSamples, asymptotic_fit, geometric_grid, mean_basis
from rieszkit.means.riesz import (
    hardy_identity_residual, hormander_identity_residual, iterated_riesz_integral, mean_samples, riesz_integral,
    riesz_mean, stieltjes_limit, stieltjes_mean,
)
