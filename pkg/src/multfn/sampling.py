import math
from enum import Enum
from typing import Optional

import numpy as np

from src.arith import PrimeTable
from src.multfn.function import CMFunction
from src.utils.errors import InvalidArgumentError


class SampleKind(str, Enum):
    CONSTANT_ONE = "constant_one"
    RANDOM_UNIMODULAR = "random_unimodular"
    ARC_CONSTRAINED = "arc_constrained"


def omega_max(N: int) -> int:
    """floor(log2 N), the largest Omega(n) for n <= N (at least 1)."""
    return max(1, int(N).bit_length() - 1)


def sample(
    kind: str,
    seed: int,
    domain_limit: int,
    table: PrimeTable,
    c: Optional[float] = None,
    N: Optional[int] = None,
) -> CMFunction:
    """
    Draw a completely multiplicative unimodular function.

    Args:
        kind: constant_one, random_unimodular or arc_constrained
        seed: Seed for numpy's default generator
        domain_limit: Largest n the function will be evaluated at
        table: Prime table covering domain_limit
        c: F(c) threshold for arc_constrained, in (0, 1)
        N: Truncation bound for arc_constrained

    Returns:
        CMFunction, identical for identical arguments
    """
    kind = SampleKind(kind)
    rng = np.random.default_rng(seed)
    primes = table.primes_upto(domain_limit).tolist()

    if kind is SampleKind.CONSTANT_ONE:
        angles = {}
    elif kind is SampleKind.RANDOM_UNIMODULAR:
        draws = rng.uniform(-math.pi, math.pi, size=len(primes))
        angles = dict(zip(primes, draws.tolist()))
    else:
        if c is None or not 0 < c < 1:
            raise InvalidArgumentError(f"arc_constrained needs 0 < c < 1, got {c}")
        N = N or domain_limit
        # Omega(n) <= floor(log2 N) keeps every angle sum inside [0, arccos c]
        top = math.acos(c) / omega_max(N)
        draws = rng.uniform(0.0, top, size=len(primes))
        angles = dict(zip(primes, draws.tolist()))

    return CMFunction(prime_angles=angles, domain_limit=domain_limit, table=table)
