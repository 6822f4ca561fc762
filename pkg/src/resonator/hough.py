"""
The multiplicative resonator: r(p) = lam / (sqrt(p) log p) on the prime window
[lam^2, exp((log lam)^2)], extended completely multiplicatively to n <= x.
"""

import math
from typing import Mapping, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from src.arith import PrimeTable, window_products
from src.resonator.types import Resonator, ResonatorMeta, ResonatorStyle
from src.utils.errors import InvalidArgumentError, OutOfRangeError
from src.utils.logger import setup_logger

logger = setup_logger("HoughResonator")


def default_lambda(x: float) -> float:
    """lam = sqrt(log x * log log x), defined for x > e."""
    if x <= math.e:
        raise InvalidArgumentError(f"x = {x} must exceed e so that log log x > 0")
    return math.sqrt(math.log(x) * math.log(math.log(x)))


def default_window(lam: float) -> Tuple[float, float]:
    """Prime window [lam^2, exp((log lam)^2)]; empty unless lam > e^2."""
    return lam * lam, math.exp(math.log(lam) ** 2)


def prime_weight(p: int, lam: float) -> float:
    return lam / (math.sqrt(p) * math.log(p))


def build_multiplicative_resonator(
    x: float,
    prime_weights: Mapping[int, float],
    meta: Optional[ResonatorMeta] = None,
) -> Resonator:
    """
    Completely multiplicative resonator supported on products n <= x of the given primes.

    Weights are accumulated in log space and exponentiated once per element.

    Args:
        x: Support bound
        prime_weights: r(p) > 0 for each admissible prime
        meta: Metadata to attach; a plain hough-style record is used otherwise

    Returns:
        Resonator with r(n) = prod r(p)^e_p
    """
    primes = sorted(int(p) for p in prime_weights)
    if any(prime_weights[p] <= 0 for p in primes):
        raise InvalidArgumentError("prime weights must be positive")
    log_weights = [math.log(prime_weights[p]) for p in primes]
    products = window_products(x, primes, log_weights)

    ns = np.array([n for n, _ in products], dtype=np.int64)
    weights = np.exp(np.array([acc for _, acc in products]))
    if meta is None:
        window = (primes[0], primes[-1]) if primes else None
        meta = ResonatorMeta(
            style=ResonatorStyle.HOUGH,
            x=x,
            window=window,
            prime_weights=prime_weights,
            default_regime=False,
            window_empty=not primes,
        )
    return Resonator(ns=ns, weights=weights, meta=meta)


def build_hough_resonator(
    T: float,
    N: float,
    table: PrimeTable,
    window_override: Optional[Tuple[float, float]] = None,
    lam_override: Optional[float] = None,
) -> Resonator:
    """
    Build the resonator with x = T/N and lam = sqrt(log x log log x).

    Args:
        T: Height of the t-range
        N: Length of the Dirichlet polynomial, 1 <= N < T
        table: Prime table covering the window
        window_override: Prime window (p_lo, p_hi) replacing the default window
        lam_override: Value of lam replacing the default formula

    Returns:
        Hough-style Resonator; meta.default_regime is False when an override was used,
        meta.window_empty is True when no prime is admissible
    """
    if not T > N >= 1:
        raise InvalidArgumentError(f"need T > N >= 1, got T={T}, N={N}")
    x = T / N
    if x <= math.e:
        raise InvalidArgumentError(f"x = T/N = {x:.6g} must exceed e (log log x undefined)")

    lam = lam_override if lam_override is not None else default_lambda(x)
    default_regime = window_override is None and lam_override is None
    window = tuple(window_override) if window_override is not None else default_window(lam)
    p_lo, p_hi = window

    if p_lo <= p_hi and p_hi > table.limit:
        raise OutOfRangeError(
            f"prime window upper end {p_hi:.6g} exceeds sieve limit {table.limit}; "
            f"enlarge the sieve or pass a window override"
        )

    primes = table.primes_between(p_lo, p_hi).tolist() if p_lo <= p_hi else []
    if not default_regime:
        logger.warning(f"Window override {window} departs from the default prescription")
    if not primes:
        logger.warning(f"Prime window [{p_lo:.6g}, {p_hi:.6g}] holds no prime; resonator is {{1}}")

    prime_weights = {p: prime_weight(p, lam) for p in primes}
    meta = ResonatorMeta(
        style=ResonatorStyle.HOUGH,
        lam=lam,
        x=x,
        window=(float(p_lo), float(p_hi)),
        prime_weights=prime_weights,
        default_regime=default_regime,
        window_empty=not primes,
    )
    resonator = build_multiplicative_resonator(x, prime_weights, meta)
    logger.info(f"Hough resonator: x={x:.6g}, lam={lam:.6g}, {len(primes)} primes, support {resonator.size}")
    return resonator


def min_x_for_nonempty_window(table: PrimeTable) -> float:
    """
    Smallest x whose default window [lam^2, exp((log lam)^2)] contains a prime.

    A prime p is admissible once exp(sqrt(log p)) <= lam <= sqrt(p), which needs
    log p >= 4; lam grows with x, so the first such prime fixes the threshold.
    """
    for p in table.primes.tolist():
        if math.log(p) < 4:
            continue
        lam = math.exp(math.sqrt(math.log(p)))
        if lam * lam <= p:
            target = lam * lam
            # log x * log log x = lam^2, solved for u = log x > 1
            u = brentq(lambda v: v * math.log(v) - target, 1.0 + 1e-12, max(4.0, target))
            return math.exp(u)
    raise OutOfRangeError(f"no admissible prime below sieve limit {table.limit}")
