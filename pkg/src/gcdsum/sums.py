"""
GCD sums (1/|M|) sum_{m,n in M} sqrt((m,n)/[m,n]) and their truncated variants.

Pairs are evaluated row-block by row-block with exact integer gcd/lcm and one
floating sqrt per pair. Block sums are taken with math.fsum and combined in
block order, so the result does not depend on the worker count.
"""

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from src.arith import INT64_MAX, PrimeTable, gcd_ratio, largest_prime_factor, sieve
from src.gcdsum.bounds import tail_bound
from src.resonator.types import IntegerSet
from src.utils.errors import InvalidArgumentError
from src.utils.parallel import DEFAULT_BLOCK_SIZE, map_blocks

# Above this element size lcm can leave int64, so pairs go through exact Python ints
FAST_PATH_MAX = math.isqrt(INT64_MAX)


@dataclass(frozen=True)
class GcdSumReport:
    """
    Full and truncated GCD sums of a set M.

    full, truncated, tail_exact and tail_bound are all normalized by |M|;
    tail_bound_raw is the unnormalized |M| N^{-2 eta} prod(...) form.
    Truncation keeps the pairs with [m,n]/(m,n) <= N^2/2.
    """

    full: float
    truncated: float
    tail_exact: float
    tail_bound: float
    tail_bound_raw: float
    K: int
    y_M: int
    N: float
    eta: float

    def to_dict(self) -> dict:
        return asdict(self)


def truncation_cap(N: float) -> int:
    """Largest integer q with q <= N^2/2, computed exactly from the float N."""
    return math.floor(Fraction(N) ** 2 / 2)


def _block_sums(arr: np.ndarray, lo: int, hi: int, cap: Optional[int]) -> Tuple[float, float]:
    """(sum over all pairs, sum over pairs with [m,n]/(m,n) <= cap) for rows lo..hi."""
    rows = arr[lo:hi, None]
    if arr[-1] <= FAST_PATH_MAX:
        g = np.gcd(rows, arr[None, :])
        reduced = (rows // g) * (arr[None, :] // g)
        values = np.sqrt(1.0 / reduced.astype(float))
        total = math.fsum(values.ravel().tolist())
        if cap is None:
            return total, total
        # reduced fits in int64 here, so the comparison stays in integers
        kept = values[reduced <= np.int64(min(cap, INT64_MAX))]
        return total, math.fsum(kept.ravel().tolist())

    all_terms, kept_terms = [], []
    for m in arr[lo:hi].tolist():
        for n in arr.tolist():
            v = gcd_ratio(m, n)
            all_terms.append(v)
            if cap is not None:
                g = math.gcd(m, n)
                if (m // g) * (n // g) <= cap:
                    kept_terms.append(v)
    total = math.fsum(all_terms)
    return total, (total if cap is None else math.fsum(kept_terms))


def _pair_sums(M: IntegerSet, cap: Optional[int], workers: int, block_size: int) -> Tuple[float, float]:
    arr = M.as_array()
    blocks = map_blocks(lambda lo, hi: _block_sums(arr, lo, hi, cap), len(arr), workers, block_size)
    return math.fsum(b[0] for b in blocks), math.fsum(b[1] for b in blocks)


def gcd_sum(M: IntegerSet, workers: int = 1, block_size: int = DEFAULT_BLOCK_SIZE) -> float:
    """
    Normalized GCD sum over all ordered pairs, diagonal included.

    Args:
        M: Non-empty integer set
        workers: Threads used for row blocks
        block_size: Rows per block

    Returns:
        (1/|M|) sum_{m,n} sqrt((m,n)/[m,n]), always >= 1
    """
    full, _ = _pair_sums(M, None, workers, block_size)
    return full / len(M)


def gcd_sum_truncated(
    M: IntegerSet,
    N: float,
    eta: float = 0.1,
    table: Optional[PrimeTable] = None,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> GcdSumReport:
    """
    Split the GCD sum at [m,n]/(m,n) = N^2/2 and bound the discarded tail.

    Args:
        M: Non-empty integer set
        N: Truncation parameter, at least 1
        eta: Exponent of the tail bound, in (0, 1/2)
        table: Prime table for P(m); one is sieved when omitted
        workers: Threads used for row blocks
        block_size: Rows per block

    Returns:
        GcdSumReport
    """
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    full_raw, kept_raw = _pair_sums(M, truncation_cap(N), workers, block_size)
    K = len(M)
    full = full_raw / K
    truncated = kept_raw / K

    table = table or sieve(max(2, math.isqrt(M.elements[-1]) + 1))
    y_M = set_smoothness(M, table)
    bound_raw = tail_bound(M, N, eta, table, y_M=y_M)

    return GcdSumReport(
        full=full,
        truncated=truncated,
        tail_exact=full - truncated,
        tail_bound=bound_raw / K,
        tail_bound_raw=bound_raw,
        K=K,
        y_M=y_M,
        N=N,
        eta=eta,
    )


def set_smoothness(M: IntegerSet, table: PrimeTable) -> int:
    """y_M = max over m in M of the largest prime factor P(m)."""
    return max(largest_prime_factor(m, table) for m in M.elements)
