from .types import IntegerSet, Resonator, ResonatorMeta, ResonatorStyle
from .hough import (
    build_hough_resonator,
    build_multiplicative_resonator,
    min_x_for_nonempty_window,
    default_lambda,
    default_window,
    prime_weight,
)
from .binned import bin_index, build_binned_resonator, mesh_ratio
from .diagonal import DiagonalSums, closure_weights, diagonal_pair_sum, diagonal_sums
from .io import dump_integer_set, dump_resonator, load_integer_set, load_resonator

__all__ = [
    "IntegerSet",
    "Resonator",
    "ResonatorMeta",
    "ResonatorStyle",
    "build_hough_resonator",
    "build_multiplicative_resonator",
    "min_x_for_nonempty_window",
    "default_lambda",
    "default_window",
    "prime_weight",
    "bin_index",
    "build_binned_resonator",
    "mesh_ratio",
    "DiagonalSums",
    "closure_weights",
    "diagonal_pair_sum",
    "diagonal_sums",
    "dump_integer_set",
    "dump_resonator",
    "load_integer_set",
    "load_resonator",
]
