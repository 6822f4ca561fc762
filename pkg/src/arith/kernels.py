import math

from src.utils.errors import ArithmeticOverflowError, InvalidArgumentError

INT64_MAX = 2 ** 63 - 1


def lcm_checked(m: int, n: int, bound: int = INT64_MAX) -> int:
    """
    Exact lcm(m, n) computed as (m // gcd) * n.

    Raises ArithmeticOverflowError when the result exceeds ``bound`` (the signed
    64-bit range by default) instead of letting later float work lose exactness.
    """
    if m < 1 or n < 1:
        raise InvalidArgumentError(f"lcm needs positive integers, got ({m}, {n})")
    lcm = (m // math.gcd(m, n)) * n
    if bound is not None and lcm > bound:
        raise ArithmeticOverflowError(f"lcm({m}, {n}) = {lcm} exceeds {bound}")
    return lcm


def gcd_ratio(m: int, n: int) -> float:
    """sqrt(gcd(m, n) / lcm(m, n)); symmetric, equal to 1 iff m == n."""
    if m < 1 or n < 1:
        raise InvalidArgumentError(f"gcd_ratio needs positive integers, got ({m}, {n})")
    g = math.gcd(m, n)
    return math.sqrt(g / lcm_checked(m, n))
