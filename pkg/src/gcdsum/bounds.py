import math
from typing import Optional

from src.arith import PrimeTable, largest_prime_factor, sieve
from src.utils.errors import DomainError, InvalidArgumentError


def tail_product(y: int, eta: float, table: PrimeTable) -> float:
    """prod_{p <= y} (1 + 2 / (p^{1/2 - eta} - 1)); 1 for y < 2."""
    if y < 2:
        return 1.0
    exponent = 0.5 - eta
    log_prod = math.fsum(math.log1p(2.0 / (p ** exponent - 1.0)) for p in table.primes_upto(y).tolist())
    return math.exp(log_prod)


def tail_bound(M, N: float, eta: float, table: Optional[PrimeTable] = None, y_M: Optional[int] = None) -> float:
    """
    |M| N^{-2 eta} prod_{p <= y_M} (1 + 2 / (p^{1/2 - eta} - 1)).

    Unnormalized, to compare with the sum of sqrt((m,n)/[m,n]) over pairs with
    [m,n]/(m,n) > N^2/2. Decreasing in N.

    Args:
        M: Integer set
        N: Truncation parameter
        eta: Exponent in (0, 1/2)
        table: Prime table reaching y_M (sieved when omitted)
        y_M: Largest prime factor over M, computed when omitted

    Returns:
        Tail bound
    """
    if not 0 < eta < 0.5:
        raise InvalidArgumentError(f"eta must lie in (0, 1/2), got {eta}")
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    if y_M is None:
        table = table or sieve(max(2, math.isqrt(max(M.elements)) + 1))
        y_M = max(largest_prime_factor(m, table) for m in M.elements)
    if table is None or table.limit < y_M:
        table = sieve(max(2, y_M))
    return len(M) * N ** (-2.0 * eta) * tail_product(y_M, eta, table)


def lemma_rate(K: float) -> float:
    """
    exp(2 sqrt 2 sqrt(log K log_3 K / log_2 K)), the extremal GCD-sum growth with o(1) dropped.

    Args:
        K: Set size, above e^e so that log_3 K > 0

    Returns:
        Rate value
    """
    if K <= math.e ** math.e:
        raise DomainError(f"lemma_rate undefined at K = {K}", hypothesis="log_3 K > 0, i.e. K > e^e ~ 15.15")
    log_k = math.log(K)
    log2_k = math.log(log_k)
    log3_k = math.log(log2_k)
    return math.exp(2.0 * math.sqrt(2.0) * math.sqrt(log_k * log3_k / log2_k))
