from .bounds import lemma_rate, tail_bound, tail_product
from .sums import GcdSumReport, gcd_sum, gcd_sum_truncated, set_smoothness, truncation_cap
from .construct import CandidateSetBuilder, construct_candidate_set, pair_matrix, smoothness_exponent

__all__ = [
    "lemma_rate",
    "tail_bound",
    "tail_product",
    "GcdSumReport",
    "gcd_sum",
    "gcd_sum_truncated",
    "set_smoothness",
    "truncation_cap",
    "CandidateSetBuilder",
    "construct_candidate_set",
    "pair_matrix",
    "smoothness_exponent",
]
