import math
from dataclasses import asdict, dataclass

import numpy as np

from src.utils.errors import InvalidArgumentError


def lipschitz_constant(N: int) -> float:
    """sum_{n <= N} log n = log N!, a bound on |d/dt S_t(N)|."""
    return math.lgamma(N + 1)


@dataclass(frozen=True)
class TGrid:
    """Uniform grid on [t_min, t_max]."""

    t_min: float
    t_max: float
    spacing: float
    refinement_depth: int = 0

    def __post_init__(self):
        if not self.t_max > self.t_min:
            raise InvalidArgumentError(f"empty grid range [{self.t_min}, {self.t_max}]")
        if not self.spacing > 0:
            raise InvalidArgumentError(f"grid spacing must be positive, got {self.spacing}")

    @property
    def count(self) -> int:
        return int(math.ceil((self.t_max - self.t_min) / self.spacing)) + 1

    def points(self) -> np.ndarray:
        return np.minimum(self.t_min + self.spacing * np.arange(self.count), self.t_max)

    @classmethod
    def certified(cls, T: float, N: int, tolerance: float, t_min: float = 1.0) -> "TGrid":
        """Spacing tolerance / (N log N), so the maximum between nodes exceeds the nodes by at most tolerance/2."""
        if tolerance <= 0:
            raise InvalidArgumentError(f"tolerance must be positive, got {tolerance}")
        if N < 2:
            return cls(t_min, T, T - t_min)
        return cls(t_min, T, tolerance / (N * math.log(N)))

    @classmethod
    def for_frequencies(cls, T: float, max_freq: float, cells_per_period: int = 4, t_min: float = 1.0) -> "TGrid":
        """Cells short enough to resolve oscillations up to max_freq."""
        period = 2.0 * math.pi / max(max_freq, 1e-9)
        return cls(t_min, T, min(T - t_min, period / cells_per_period))

    def to_dict(self):
        return asdict(self)
