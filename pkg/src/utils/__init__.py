from .logger import configure_logging, setup_logger
from .errors import (
    ArithmeticOverflowError,
    BudgetExceededError,
    DomainError,
    InfeasibleError,
    InvalidArgumentError,
    InvalidStateError,
    LabError,
    OutOfRangeError,
)
from .parallel import block_ranges, map_blocks, resolve_workers

__all__ = [
    "configure_logging",
    "setup_logger",
    "ArithmeticOverflowError",
    "BudgetExceededError",
    "DomainError",
    "InfeasibleError",
    "InvalidArgumentError",
    "InvalidStateError",
    "LabError",
    "OutOfRangeError",
    "block_ranges",
    "map_blocks",
    "resolve_workers",
]
