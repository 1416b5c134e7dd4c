from rieszkit.coefficients.types import (
    UNDETERMINED, CoeffTable, DiagonalLambdaCoeffs, DiagonalOmegaCoeffs, KernelExpansion, KernelTerm, OmegaMeans,
    Undetermined, odd_positive,
)
from rieszkit.coefficients.transforms import (
    ConsistencyReport, cylinder_from_omega_diag, hardy_kernel_coeffs, heat_from_lambda_diag, hormander_weights,
    lambda_diag_from_heat, lambda_diag_from_omega_diag, lambda_full_from_omega, lambda_table_from_diag,
    omega_diag_from_cylinder, omega_diag_from_lambda_diag, omega_full_from_lambda, omega_table_from_diag,
    rescale_log_scale, verify_consistency,
)
from rieszkit.coefficients.pipelines import (
    cylinder_pipeline_from_lambda, cylinder_terms_from_lambda_means, gaussian_derivative_table,
    heat_pipeline_from_omega, heat_terms_from_omega_means, moment_map, render_cylinder_terms, render_heat_terms,
    sqrt_exp_derivative_table,
)
