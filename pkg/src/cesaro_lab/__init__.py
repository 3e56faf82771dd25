"""Discrete fractional calculus, Cesàro means of matrices and decay experiments."""

from .algebras import (
    PeriodicFn,
    annihilator_polynomial,
    fourier_coefficients,
    q_bar_norm,
    q_norm,
    q_norm_plus,
    q_norm_split,
    norm_equivalence_sweep,
    submultiplicativity_ratio,
    submultiplicativity_sweep,
    wiener_norm,
)
from .calculus import (
    DecayCurve,
    ErgodicReport,
    calculus_consistency_residual,
    dyadic_grid,
    ergodic_growth_report,
    functional_calculus,
    h_sequence,
    kt_decay_curve,
    linear_grid,
    mean_difference_curve,
    mean_shift_identity_residual,
    mean_step_identity_residual,
    polynomial_calculus,
    resolvent_series,
)
from .fracdiff import (
    ZSeq,
    convolve,
    random_zseq,
    reflect,
    split_neg,
    split_pos,
    weyl_combined,
    weyl_diff_minus_at,
    weyl_diff_plus_at,
    weyl_diff_minus_via_composition,
    weyl_diff_plus_via_composition,
    weyl_sum_minus_at,
    weyl_sum_plus_at,
)
from .kernels import (
    CesaroKernelTable,
    kernel_asymptotic_ratio,
    kernel_convolve,
    kernel_doubling_ratio,
    kernel_generating_partial,
    kernel_table,
    kernel_value,
    kernel_values,
)
from .operators import (
    CesaroTransform,
    NumericalError,
    cesaro_bounded_probe,
    cesaro_mean,
    cesaro_sum,
    eigenvalues,
    load_matrix,
    matrix_power,
    operator_norm,
    operator_norms,
    peripheral_spectrum,
    power_growth_probe,
    random_matrix,
    save_matrix,
    spectral_radius,
)
from .fixtures import fixture_names, load_fixture

__version__ = "0.1.0"
