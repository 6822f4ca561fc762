"""
Deterministic block-parallel evaluation.

Work is cut into fixed-size index blocks whose boundaries depend only on the
problem size and the configured block size, never on the worker count. Blocks
are evaluated on a thread pool (numpy releases the GIL inside its kernels) and
their partial results are combined in block order with math.fsum, so the
numbers are bitwise identical for 1 or 64 workers.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple, TypeVar

from src.utils.errors import InvalidArgumentError

T = TypeVar("T")

THREADS_ENV = "RESONANCE_LAB_THREADS"
DEFAULT_BLOCK_SIZE = 256


def resolve_workers(workers: Optional[int] = None, default: int = 1) -> int:
    """
    Pick the worker count: explicit argument, then RESONANCE_LAB_THREADS, then default.

    Args:
        workers: Explicit worker count (None to fall back)
        default: Value used when neither the argument nor the env var is set

    Returns:
        Positive worker count
    """
    if workers is None:
        raw = os.getenv(THREADS_ENV)
        if raw:
            try:
                workers = int(raw)
            except ValueError:
                raise InvalidArgumentError(f"{THREADS_ENV} must be an integer, got {raw!r}")
        else:
            workers = default
    if workers < 1:
        raise InvalidArgumentError(f"worker count must be >= 1, got {workers}")
    return workers


def block_ranges(n: int, block_size: int = DEFAULT_BLOCK_SIZE) -> List[Tuple[int, int]]:
    """Split range(n) into consecutive half-open blocks of at most block_size."""
    if block_size < 1:
        raise InvalidArgumentError(f"block size must be >= 1, got {block_size}")
    return [(lo, min(lo + block_size, n)) for lo in range(0, n, block_size)]


def map_blocks(
    fn: Callable[[int, int], T],
    n: int,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> List[T]:
    """
    Evaluate fn(lo, hi) on every block of range(n), preserving block order.

    Args:
        fn: Block function taking half-open bounds
        n: Total number of items
        workers: Thread count
        block_size: Items per block (fixes the reduction order)

    Returns:
        List of per-block results in block order
    """
    blocks = block_ranges(n, block_size)
    if workers <= 1 or len(blocks) <= 1:
        return [fn(lo, hi) for lo, hi in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: fn(*b), blocks))

