from typing import List, Optional, Sequence, Tuple

from src.arith.sieve import PrimeTable, largest_prime_factor
from src.utils.errors import InvalidArgumentError


def window_products(
    x: float,
    primes: Sequence[int],
    prime_values: Optional[Sequence[float]] = None,
) -> List[Tuple[int, float]]:
    """
    All products n <= x of the given primes (with repetition), including n = 1.

    Depth-first generation in non-decreasing prime order, so each n appears once
    and nothing outside the multiplicative closure is ever visited. When
    ``prime_values`` is given, each n carries the sum of the values of its prime
    factors with multiplicity (e.g. log-weights); otherwise 0.0.

    Args:
        x: Upper bound
        primes: Ascending primes
        prime_values: Optional additive value per prime

    Returns:
        Sorted list of (n, accumulated value)
    """
    primes = [int(p) for p in primes]
    values = [float(v) for v in prime_values] if prime_values is not None else [0.0] * len(primes)

    out = [(1, 0.0)]
    stack = [(1, 0.0, 0)]
    while stack:
        n, acc, start = stack.pop()
        for i in range(start, len(primes)):
            m = n * primes[i]
            if m > x:
                break
            a = acc + values[i]
            out.append((m, a))
            stack.append((m, a, i))
    out.sort()
    return out


def enumerate_window_integers(x: float, p_lo: float, p_hi: float, table: PrimeTable) -> List[int]:
    """
    Integers n <= x whose prime factors all lie in [p_lo, p_hi].

    Args:
        x: Upper bound, at least 1
        p_lo: Lower end of the prime window
        p_hi: Upper end of the prime window (<= table.limit)
        table: Prime table

    Returns:
        Sorted list, always containing 1
    """
    if x < 1:
        raise InvalidArgumentError(f"x must be >= 1, got {x}")
    if p_lo > p_hi:
        return [1]
    primes = table.primes_between(p_lo, p_hi)
    return [n for n, _ in window_products(x, primes.tolist())]


def is_smooth(n: int, y: float, table: PrimeTable) -> bool:
    """True when every prime factor of n is <= y."""
    return largest_prime_factor(n, table) <= y


def smooth_integers(lo: float, hi: float, y: float, table: PrimeTable) -> List[int]:
    """y-smooth integers in [lo, hi], ascending."""
    primes = table.primes_upto(y)
    return [n for n, _ in window_products(hi, primes.tolist()) if n >= lo]
