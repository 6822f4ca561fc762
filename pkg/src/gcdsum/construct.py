"""
Heuristic large-GCD-sum sets.

Candidates are the y-smooth integers in [c, 2c], so every output satisfies the
dyadic and smoothness hypotheses of the GCD-sum lemma. A greedy seed takes the
K most divisor-rich candidates; a swap-based local search then accepts random
(out, in) exchanges that raise the pair sum.
"""

import math
from typing import List, Optional, Sequence

import numpy as np

from src.arith import PrimeTable, gcd_ratio, sieve, smooth_integers
from src.gcdsum.sums import FAST_PATH_MAX, gcd_sum
from src.resonator.types import IntegerSet
from src.utils.errors import InfeasibleError, InvalidArgumentError
from src.utils.logger import setup_logger

# Candidate pools above this size are cut to the most divisor-rich members
POOL_LIMIT = 3000


def pair_matrix(values: Sequence[int]) -> np.ndarray:
    """sqrt((m,n)/[m,n]) for every ordered pair of values, as a dense float matrix."""
    if max(values) <= FAST_PATH_MAX:
        arr = np.array(values, dtype=np.int64)
        g = np.gcd(arr[:, None], arr[None, :])
        return np.sqrt(1.0 / ((arr[:, None] // g) * (arr[None, :] // g)).astype(float))
    return np.array([[gcd_ratio(m, n) for n in values] for m in values], dtype=float)


class CandidateSetBuilder:
    """Greedy seeding plus swap local search over y-smooth integers in [c, 2c]."""

    def __init__(
        self,
        K: int,
        y: int,
        window_center: int,
        search_budget: int,
        seed: int,
        table: Optional[PrimeTable] = None,
    ):
        """
        Initialize the builder.

        Args:
            K: Target set size, at least 2
            y: Smoothness bound, at least 2
            window_center: Lower end c of the window [c, 2c]
            search_budget: Number of swap proposals
            seed: Seed for the proposal generator
            table: Prime table reaching y (sieved when omitted)
        """
        if K < 2:
            raise InvalidArgumentError(f"K must be >= 2, got {K}")
        if y < 2:
            raise InvalidArgumentError(f"y must be >= 2, got {y}")
        if window_center < 1:
            raise InvalidArgumentError(f"window center must be positive, got {window_center}")
        if search_budget < 0:
            raise InvalidArgumentError(f"search budget must be >= 0, got {search_budget}")

        self.K = K
        self.y = y
        self.window_center = window_center
        self.search_budget = search_budget
        self.seed = seed
        self.table = table if table is not None and table.limit >= y else sieve(max(2, y))
        self.logger = setup_logger("CandidateSetBuilder")
        self.accepted_swaps = 0

    def candidates(self) -> List[int]:
        """y-smooth integers in [c, 2c]."""
        pool = smooth_integers(self.window_center, 2 * self.window_center, self.y, self.table)
        if len(pool) < self.K:
            raise InfeasibleError(
                f"only {len(pool)} {self.y}-smooth integers in "
                f"[{self.window_center}, {2 * self.window_center}], need K={self.K}"
            )
        return pool

    def divisor_count(self, n: int) -> int:
        count = 1
        for p in self.table.primes_upto(self.y).tolist():
            if p > n:
                break
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            count *= e + 1
        return count

    def build(self) -> IntegerSet:
        """Run seeding and local search; returns the best set found."""
        pool = self.candidates()
        ranked = sorted(pool, key=lambda n: (-self.divisor_count(n), n))
        if len(ranked) > POOL_LIMIT:
            self.logger.info(f"Candidate pool {len(ranked)} cut to {POOL_LIMIT} most divisor-rich")
            ranked = ranked[: max(POOL_LIMIT, self.K)]

        values = np.array(ranked, dtype=np.int64)
        pair = pair_matrix(ranked)

        selected = np.zeros(len(values), dtype=bool)
        selected[: self.K] = True
        row_sums = pair[:, selected].sum(axis=1)

        rng = np.random.default_rng(self.seed)
        self.accepted_swaps = 0
        if len(values) > self.K:
            for _ in range(self.search_budget):
                inside = np.flatnonzero(selected)
                outside = np.flatnonzero(~selected)
                a = int(inside[rng.integers(len(inside))])
                b = int(outside[rng.integers(len(outside))])
                # change of the ordered pair sum when a leaves and b joins
                delta = 2.0 * (row_sums[b] - pair[b, a] - row_sums[a]) + 2.0
                if delta > 1e-12:
                    selected[a], selected[b] = False, True
                    row_sums += pair[:, b] - pair[:, a]
                    self.accepted_swaps += 1

        result = IntegerSet.of(values[selected].tolist())
        self.logger.info(
            f"Candidate set: K={self.K}, y={self.y}, window [{self.window_center}, {2 * self.window_center}], "
            f"pool {len(pool)}, {self.accepted_swaps} swaps accepted, gcd sum {gcd_sum(result):.6g}"
        )
        return result


def construct_candidate_set(
    K: int,
    y: int,
    window_center: int,
    search_budget: int,
    seed: int,
    table: Optional[PrimeTable] = None,
) -> IntegerSet:
    """
    Build a K-element, y-smooth set in [c, 2c] with a large GCD sum.

    Args:
        K: Set size
        y: Smoothness bound
        window_center: c
        search_budget: Swap proposals for the local search
        seed: Seed making the result deterministic
        table: Optional prime table

    Returns:
        IntegerSet with |M| = K and max M <= 2 min M
    """
    return CandidateSetBuilder(K, y, window_center, search_budget, seed, table).build()


def smoothness_exponent(y: int, K: int) -> float:
    """log y / log log K, the exponent 1 + o(1) in y_M <= (log K)^{1+o(1)}."""
    if K <= math.e:
        return math.inf
    return math.log(y) / math.log(math.log(K))
