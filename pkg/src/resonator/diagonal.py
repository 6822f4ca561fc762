import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.arith import window_products
from src.resonator.types import Resonator, ResonatorStyle
from src.utils.errors import InvalidArgumentError


@dataclass(frozen=True)
class DiagonalSums:
    """
    Diagonal quantities of a multiplicative resonator.

    sum_r2 = sum_{m <= x} r(m)^2, sum_rk = sum_{k <= N} r(k) over the
    multiplicative closure of the window, and
    i2_diag = sum_{k <= N} r(k) sum_{m <= x/k} r(m)^2.
    """

    sum_r2: float
    sum_rk: float
    i2_diag: float


def closure_weights(R: Resonator, bound: float):
    """(k, r(k)) for every k <= bound in the multiplicative closure of R's primes."""
    primes = sorted(R.meta.prime_weights)
    logs = [math.log(R.meta.prime_weights[p]) for p in primes]
    return [(k, math.exp(acc)) for k, acc in window_products(bound, primes, logs)]


def diagonal_sums(R: Resonator, N: float, x: Optional[float] = None) -> DiagonalSums:
    """
    Evaluate the diagonal identities of the first-power moments.

    Args:
        R: Hough-style (completely multiplicative) resonator
        N: Range of k
        x: Support bound; defaults to R.meta.x

    Returns:
        DiagonalSums
    """
    if R.style is not ResonatorStyle.HOUGH:
        raise InvalidArgumentError("diagonal identities need a completely multiplicative resonator")
    x = R.meta.x if x is None else x
    if x is None:
        raise InvalidArgumentError("support bound x is unknown; pass it explicitly")

    ns = R.ns
    r2 = (R.weights ** 2).tolist()
    upto_x = int(np.searchsorted(ns, x, side="right"))
    sum_r2 = math.fsum(r2[:upto_x])

    closure = closure_weights(R, N)
    sum_rk = math.fsum(w for _, w in closure)

    terms = []
    for k, rk in closure:
        cut = int(np.searchsorted(ns, x / k, side="right"))
        if cut == 0:
            continue
        terms.append(rk * math.fsum(r2[:cut]))
    i2_diag = math.fsum(terms)

    return DiagonalSums(sum_r2=sum_r2, sum_rk=sum_rk, i2_diag=i2_diag)


def diagonal_pair_sum(R: Resonator, N: float) -> float:
    """Brute-force sum_{k <= N} sum_{m : km in support} r(m) r(km)."""
    weights = dict(R.support)
    terms = []
    for k in range(1, int(N) + 1):
        for m, rm in weights.items():
            rkm = weights.get(k * m)
            if rkm is not None:
                terms.append(rm * rkm)
    return math.fsum(terms)
