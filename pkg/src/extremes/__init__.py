from .poly import GRID_ELEMENTS, eval_poly, eval_poly_grid, grid_rows
from .grid import TGrid, lipschitz_constant
from .search import MaximumFinder, SearchResult, find_max
from .special import e1, e1_inverse, tau_prime
from .predictors import (
    PredictorInputs,
    PredictorResult,
    range_check,
    thm11_inputs,
    thm11_predictor,
    thm12_predictor,
    xy_predictor,
)
from .certify import (
    CertificationResult,
    ResonanceCertifier,
    ResonanceParams,
    certify_resonance,
    feasible_window_center,
)

__all__ = [
    "eval_poly",
    "eval_poly_grid",
    "grid_rows",
    "GRID_ELEMENTS",
    "TGrid",
    "lipschitz_constant",
    "MaximumFinder",
    "SearchResult",
    "find_max",
    "e1",
    "e1_inverse",
    "tau_prime",
    "PredictorInputs",
    "PredictorResult",
    "range_check",
    "thm11_inputs",
    "thm11_predictor",
    "thm12_predictor",
    "xy_predictor",
    "CertificationResult",
    "ResonanceCertifier",
    "ResonanceParams",
    "certify_resonance",
    "feasible_window_center",
]
