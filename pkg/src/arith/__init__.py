from .sieve import PrimeTable, Factorization, sieve, factorize, largest_prime_factor
from .kernels import INT64_MAX, gcd_ratio, lcm_checked
from .smooth import enumerate_window_integers, is_smooth, smooth_integers, window_products

__all__ = [
    "PrimeTable",
    "Factorization",
    "sieve",
    "factorize",
    "largest_prime_factor",
    "INT64_MAX",
    "gcd_ratio",
    "lcm_checked",
    "enumerate_window_integers",
    "is_smooth",
    "smooth_integers",
    "window_products",
]
