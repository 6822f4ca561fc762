import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.utils.errors import InvalidArgumentError, OutOfRangeError
from src.utils.logger import setup_logger

logger = setup_logger("Sieve")


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """
    Primes up to ``limit`` with a smallest-prime-factor array.

    ``spf[n]`` is the smallest prime dividing n for 2 <= n <= limit; entries 0
    and 1 are 0. Both arrays are read-only, so a table can be shared freely
    between threads.
    """

    limit: int
    primes: np.ndarray
    spf: np.ndarray

    def smallest_prime_factor(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise OutOfRangeError(f"spf is defined for 2 <= n <= {self.limit}, got {n}")
        return int(self.spf[n])

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise OutOfRangeError(f"{n} exceeds sieve limit {self.limit}")
        return n >= 2 and int(self.spf[n]) == n

    def primes_between(self, lo: float, hi: float) -> np.ndarray:
        """Primes p with lo <= p <= hi (bounds may be real)."""
        if hi > self.limit:
            raise OutOfRangeError(f"window upper end {hi} exceeds sieve limit {self.limit}")
        mask = (self.primes >= lo) & (self.primes <= hi)
        return self.primes[mask]

    def primes_upto(self, y: float) -> np.ndarray:
        return self.primes_between(2, y)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs with increasing primes."""

    factors: Tuple[Tuple[int, int], ...]

    @property
    def value(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p ** e
        return n

    @property
    def big_omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    @property
    def largest_prime(self) -> Optional[int]:
        return self.factors[-1][0] if self.factors else None

    @property
    def divisor_count(self) -> int:
        count = 1
        for _, e in self.factors:
            count *= e + 1
        return count


def sieve(limit: int) -> PrimeTable:
    """
    Build a PrimeTable with all primes <= limit.

    Args:
        limit: Sieve bound, at least 2

    Returns:
        PrimeTable with primes and smallest-prime-factor map
    """
    if limit < 2:
        raise InvalidArgumentError(f"sieve limit must be >= 2, got {limit}")
    limit = int(limit)

    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p

    unmarked = np.nonzero(spf[2:] == 0)[0] + 2
    spf[unmarked] = unmarked
    primes = unmarked.astype(np.int64)

    spf.setflags(write=False)
    primes.setflags(write=False)
    logger.debug(f"Sieved {len(primes)} primes up to {limit}")
    return PrimeTable(limit=limit, primes=primes, spf=spf)


def factorize(n: int, table: PrimeTable) -> Factorization:
    """
    Factor n using the smallest-prime-factor map.

    Args:
        n: Integer with 1 <= n <= table.limit
        table: Prime table

    Returns:
        Factorization of n (empty for n = 1)
    """
    if n < 1:
        raise InvalidArgumentError(f"factorize needs n >= 1, got {n}")
    if n > table.limit:
        raise OutOfRangeError(f"{n} exceeds sieve limit {table.limit}")

    factors = []
    n = int(n)
    while n > 1:
        p = int(table.spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
    return Factorization(factors=tuple(factors))


def largest_prime_factor(n: int, table: PrimeTable) -> int:
    """
    P(n), the largest prime factor of n (P(1) = 1).

    Integers above the sieve limit are handled by trial division over the
    table primes as long as n <= limit**2.
    """
    if n < 1:
        raise InvalidArgumentError(f"largest_prime_factor needs n >= 1, got {n}")
    if n == 1:
        return 1
    if n <= table.limit:
        return factorize(n, table).largest_prime
    if n > table.limit ** 2:
        raise OutOfRangeError(f"{n} exceeds the square of sieve limit {table.limit}")

    largest = 1
    for p in table.primes.tolist():
        if p * p > n:
            break
        if n % p == 0:
            largest = p
            while n % p == 0:
                n //= p
    return max(largest, n) if n > 1 else largest
