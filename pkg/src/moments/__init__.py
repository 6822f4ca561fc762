from .kernel import SQRT_2PI, GaussianKernel, phi_hat, scale_parameter
from .pairsum import (
    DirichletTerms,
    PairSumResult,
    cross_pair_sum,
    merge_terms,
    polynomial_terms,
    product_terms,
    resonator_terms,
)
from .quadrature import (
    GapIntegrals,
    QuadratureResult,
    fourier_pair_closed_form,
    fourier_pair_integral,
    gap_integrals,
    i1_quadrature,
    m2_thm12_grid,
)
from .report import (
    MomentCalculator,
    MomentReport,
    MomentStyle,
    i1_pairsum,
    i2_thm11,
    i2_thm12_pairsum,
    lower_bound,
    offdiag_bound_i1,
    thm11_report,
    thm12_report,
)

__all__ = [
    "SQRT_2PI",
    "GaussianKernel",
    "phi_hat",
    "scale_parameter",
    "DirichletTerms",
    "PairSumResult",
    "cross_pair_sum",
    "merge_terms",
    "polynomial_terms",
    "product_terms",
    "resonator_terms",
    "GapIntegrals",
    "QuadratureResult",
    "fourier_pair_closed_form",
    "fourier_pair_integral",
    "gap_integrals",
    "i1_quadrature",
    "m2_thm12_grid",
    "MomentCalculator",
    "MomentReport",
    "MomentStyle",
    "i1_pairsum",
    "i2_thm11",
    "i2_thm12_pairsum",
    "lower_bound",
    "offdiag_bound_i1",
    "thm11_report",
    "thm12_report",
]
