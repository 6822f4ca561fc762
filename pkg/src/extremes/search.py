"""
Certified maximization of |S_t(N)| over 1 <= t <= T.

|S_t(N)| is Lipschitz in t with constant L = log N!, so a grid with spacing h
misses at most L h / 2 between nodes. A coarse scan at certified spacing is
followed by bounded Brent refinement of |S_t|^2 around the best nodes.
"""

import math
from dataclasses import asdict, dataclass
from typing import List, Tuple

import numpy as np
from scipy import optimize

from src.extremes.grid import TGrid, lipschitz_constant
from src.extremes.poly import eval_poly, eval_poly_grid
from src.multfn import CMFunction
from src.utils.errors import InvalidArgumentError
from src.utils.logger import setup_logger
from src.utils.parallel import map_blocks

TOP_CANDIDATES = 8
SCAN_BLOCK = 4096


@dataclass(frozen=True)
class SearchResult:
    """value = |S_{t_star}(N)|; the true maximum is at most value + certified_gap."""

    t_star: float
    value: float
    certified_gap: float
    evaluations: int
    certified: bool
    tolerance: float
    spacing: float
    grid_max: float
    symmetric: bool

    def to_dict(self):
        return asdict(self)


class MaximumFinder:
    """Grid scan plus local refinement for one polynomial."""

    def __init__(
        self,
        f: CMFunction,
        N: int,
        workers: int = 1,
        renormalize_every: int = 65536,
    ):
        if N < 1:
            raise InvalidArgumentError(f"N must be >= 1, got {N}")
        self.f = f
        self.N = int(N)
        self.workers = workers
        self.renormalize_every = renormalize_every
        self.logger = setup_logger("MaximumFinder")

    def _abs2(self, t: float) -> float:
        return abs(eval_poly(self.f, self.N, t)) ** 2

    def _scan(self, t0: float, step: float, count: int) -> Tuple[List[Tuple[float, int]], float]:
        """Top nodes (value, index) and the grid maximum along t0 + j step."""

        def block(lo: int, hi: int):
            values = np.abs(
                eval_poly_grid(self.f, self.N, t0 + lo * step, step, hi - lo, self.renormalize_every)
            )
            k = min(TOP_CANDIDATES, len(values))
            idx = np.argpartition(-values, k - 1)[:k]
            return [(float(values[i]), lo + int(i)) for i in idx]

        parts = map_blocks(block, count, self.workers, SCAN_BLOCK)
        merged = sorted((c for part in parts for c in part), key=lambda c: (-c[0], c[1]))
        return merged[:TOP_CANDIDATES], merged[0][0]

    def _refine(self, centre: float, radius: float, lo: float, hi: float) -> Tuple[float, float]:
        a, b = max(lo, centre - radius), min(hi, centre + radius)
        if b <= a:
            return centre, math.sqrt(self._abs2(centre))
        res = optimize.minimize_scalar(
            lambda t: -self._abs2(t), bounds=(a, b), method="bounded", options={"xatol": radius * 1e-6}
        )
        return float(res.x), math.sqrt(-float(res.fun))

    def find(
        self,
        T: float,
        tolerance: float,
        budget: float = math.inf,
        symmetric: bool = False,
    ) -> SearchResult:
        if not T > 1:
            raise InvalidArgumentError(f"T must exceed 1, got {T}")
        if tolerance <= 0:
            raise InvalidArgumentError(f"tolerance must be positive, got {tolerance}")

        if self.N == 1:
            return SearchResult(1.0, 1.0, 0.0, 1, True, tolerance, T - 1.0, 1.0, symmetric)

        L = lipschitz_constant(self.N)
        grid = TGrid.certified(T, self.N, tolerance)
        halves = 2 if symmetric else 1
        certified = True
        if float(grid.count) * self.N * halves > budget:
            count = max(2, int(budget // (self.N * halves)))
            grid = TGrid(1.0, T, (T - 1.0) / (count - 1))
            certified = False
            self.logger.warning(
                f"Search budget {budget:.3g} too small for tolerance {tolerance}; "
                f"scanning at spacing {grid.spacing:.3g} without certification"
            )
        # the scan runs to the last node at or beyond T, so clamp it back
        count = int(math.floor((T - 1.0) / grid.spacing)) + 1
        signs = (1.0, -1.0) if symmetric else (1.0,)

        candidates = []
        grid_max = 0.0
        for sign in signs:
            top, best = self._scan(sign * 1.0, sign * grid.spacing, count)
            # the end point T may fall between nodes
            end = math.sqrt(self._abs2(sign * T))
            top.append((end, -1))
            grid_max = max(grid_max, best, end)
            for value, idx in top:
                t = sign * T if idx < 0 else sign * (1.0 + idx * grid.spacing)
                candidates.append((value, t, sign))

        best_t, best_value = 0.0, -1.0
        for value, t, sign in sorted(candidates, key=lambda c: (-c[0], c[1])):
            lo, hi = (1.0, T) if sign > 0 else (-T, -1.0)
            t_ref, v_ref = self._refine(t, grid.spacing, lo, hi)
            for cand_t, cand_v in ((t, value), (t_ref, v_ref)):
                if cand_v > best_value:
                    best_t, best_value = cand_t, cand_v

        gap = max(0.0, grid_max + 0.5 * L * grid.spacing - best_value)
        certified = certified and gap <= tolerance
        evaluations = (count + 1) * len(signs)
        self.logger.info(
            f"max |S_t({self.N})| ~ {best_value:.6g} at t={best_t:.6g}, gap {gap:.3g}, {evaluations} grid points"
        )
        if not certified:
            self.logger.warning(f"Search result at N={self.N}, T={T:g} is not certified (gap {gap:.3g})")
        return SearchResult(
            t_star=best_t,
            value=best_value,
            certified_gap=gap,
            evaluations=evaluations,
            certified=certified,
            tolerance=tolerance,
            spacing=grid.spacing,
            grid_max=grid_max,
            symmetric=symmetric,
        )


def find_max(
    f: CMFunction,
    N: int,
    T: float,
    tolerance: float,
    budget: float = math.inf,
    symmetric: bool = False,
    workers: int = 1,
    renormalize_every: int = 65536,
) -> SearchResult:
    """
    Maximize |S_t(N)| over 1 <= t <= T, or over 1 <= |t| <= T when symmetric.

    Args:
        f: Completely multiplicative function
        N: Polynomial length
        T: Upper end of the range
        tolerance: Target certified gap
        budget: Maximum number of term evaluations in the scan
        symmetric: Search negative t as well
        workers: Threads for the scan
        renormalize_every: Steps between exact phase restarts

    Returns:
        SearchResult; certified is False when the budget forced a coarser scan
    """
    return MaximumFinder(f, N, workers, renormalize_every).find(T, tolerance, budget, symmetric)
