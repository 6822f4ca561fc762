import math
from typing import Tuple

import numpy as np

from src.multfn import CMFunction
from src.utils.errors import InvalidArgumentError, OutOfRangeError

# rows of t evaluated per numpy call in grid evaluation, and the cap on rows * N
GRID_ROWS = 4096
GRID_ELEMENTS = 2 ** 21


def _coefficients(f: CMFunction, N: int) -> Tuple[np.ndarray, np.ndarray]:
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    if N > f.domain_limit:
        raise OutOfRangeError(f"N={N} exceeds the function domain {f.domain_limit}")
    logs = np.log(np.arange(1, N + 1, dtype=float))
    return f.values_upto(N)[1:], logs


def eval_poly(f: CMFunction, N: int, t: float) -> complex:
    """S_t(N) = sum_{n <= N} f(n) n^{it}, summed directly."""
    values, logs = _coefficients(f, int(N))
    terms = values * np.exp(1j * t * logs)
    return complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))


def grid_rows(N: int, renormalize_every: int = 65536) -> int:
    """Rows per grid block, so that one block holds at most GRID_ELEMENTS phases."""
    return max(1, min(int(renormalize_every), GRID_ROWS, GRID_ELEMENTS // max(1, N)))


def eval_poly_grid(
    f: CMFunction,
    N: int,
    t0: float,
    dt: float,
    count: int,
    renormalize_every: int = 65536,
) -> np.ndarray:
    """
    S_t(N) at t = t0 + j dt for j < count.

    Phases advance by multiplying with exp(i dt log n); every chunk of at most
    ``renormalize_every`` steps restarts from exactly computed phases, which
    keeps the accumulated rotation error near chunk_length * 1e-16.
    """
    values, logs = _coefficients(f, int(N))
    if count < 0:
        raise InvalidArgumentError(f"count must be >= 0, got {count}")
    chunk = grid_rows(int(N), renormalize_every)
    step = np.exp(1j * dt * logs)

    out = np.empty(count, dtype=complex)
    for lo in range(0, count, chunk):
        rows = min(chunk, count - lo)
        start = values * np.exp(1j * (t0 + lo * dt) * logs)
        powers = np.empty((rows, len(logs)), dtype=complex)
        powers[0] = 1.0
        if rows > 1:
            powers[1:] = np.cumprod(np.broadcast_to(step, (rows - 1, len(logs))), axis=0)
        out[lo : lo + rows] = powers @ start
    return out
