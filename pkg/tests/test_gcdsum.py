import math

import numpy as np
import pytest

from src.arith import largest_prime_factor, sieve, smooth_integers
from src.gcdsum import (
    construct_candidate_set,
    gcd_sum,
    gcd_sum_truncated,
    lemma_rate,
    pair_matrix,
    smoothness_exponent,
    set_smoothness,
    tail_bound,
    tail_product,
    truncation_cap,
)
from src.resonator import IntegerSet
from src.utils.errors import ArithmeticOverflowError, DomainError, InfeasibleError, InvalidArgumentError


def naive_gcd_sum(elements):
    total = 0.0
    for m in elements:
        for n in elements:
            g = math.gcd(m, n)
            total += math.sqrt(g / (m * n // g))
    return total / len(elements)


def random_set(rng, size, hi=100000):
    return IntegerSet.of(sorted(rng.choice(np.arange(1, hi), size=size, replace=False).tolist()))


class TestGcdSum:
    @pytest.mark.parametrize(
        "elements, expected",
        [
            ([1], 1.0),
            ([1, 2], (2 + math.sqrt(2)) / 2),
            ([2, 3], (2 + 2 * math.sqrt(1 / 6)) / 2),
        ],
    )
    def test_hand_values(self, elements, expected):
        assert gcd_sum(IntegerSet.of(elements)) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_naive_double_loop(self, seed):
        rng = np.random.default_rng(seed)
        M = random_set(rng, int(rng.integers(1, 201)))
        assert gcd_sum(M) == pytest.approx(naive_gcd_sum(M.elements), rel=1e-10)

    def test_at_least_one(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            assert gcd_sum(random_set(rng, 30)) >= 1.0

    @pytest.mark.parametrize("factor", [2, 7, 360])
    def test_scale_invariance(self, factor):
        M = IntegerSet.of([12, 16, 18, 24])
        assert gcd_sum(M.scaled(factor)) == pytest.approx(gcd_sum(M), rel=1e-12)

    def test_large_elements_use_exact_path(self):
        M = IntegerSet.of([2 ** 40, 3 * 2 ** 40])
        assert gcd_sum(M) == pytest.approx((2 + 2 * math.sqrt(1 / 3)) / 2, rel=1e-12)

    def test_lcm_overflow(self):
        with pytest.raises(ArithmeticOverflowError):
            gcd_sum(IntegerSet.of([2 ** 61 + 1, 2 ** 61 + 3]))

    def test_worker_count_does_not_change_bits(self):
        M = random_set(np.random.default_rng(9), 700)
        serial = gcd_sum(M, workers=1, block_size=64)
        threaded = gcd_sum(M, workers=4, block_size=64)
        assert serial == threaded


class TestTruncation:
    def test_all_pairs_pass(self):
        report = gcd_sum_truncated(IntegerSet.of([1, 2]), 10)
        assert report.truncated == report.full
        assert report.tail_exact == 0.0

    def test_only_diagonal_passes(self):
        report = gcd_sum_truncated(IntegerSet.of([2, 3]), 2)
        assert report.truncated == pytest.approx(1.0)
        assert report.tail_exact == pytest.approx(math.sqrt(1 / 6), rel=1e-12)

    def test_large_N_recovers_full(self):
        M = IntegerSet.of([30, 42, 49, 55])
        report = gcd_sum_truncated(M, 1e6)
        assert report.truncated == report.full

    @pytest.mark.parametrize("seed", range(20))
    def test_full_splits_exactly(self, seed):
        rng = np.random.default_rng(100 + seed)
        M = random_set(rng, int(rng.integers(2, 150)), hi=5000)
        report = gcd_sum_truncated(M, float(rng.integers(2, 60)))
        assert report.full == pytest.approx(report.truncated + report.tail_exact, rel=1e-10)

    @pytest.mark.parametrize("eta", [0.05, 0.1, 0.15])
    @pytest.mark.parametrize("y, lo", [(5, 1000), (7, 3000), (13, 20000)])
    def test_tail_below_bound_on_smooth_sets(self, eta, y, lo):
        table = sieve(1000)
        M = IntegerSet.of(smooth_integers(lo, 2 * lo, y, table))
        for N in (2, 5, 20, 100):
            report = gcd_sum_truncated(M, N, eta, table)
            assert report.tail_exact <= report.tail_bound
            assert report.y_M <= y

    def test_rejects_small_N(self):
        with pytest.raises(InvalidArgumentError):
            gcd_sum_truncated(IntegerSet.of([1, 2]), 0.5)

    def test_cap_is_exact(self):
        assert truncation_cap(2) == 2
        assert truncation_cap(2.5) == 3
        assert truncation_cap(150000601) == 11250090150180600

    def test_boundary_pair_beyond_double_precision(self):
        # a * b = (N^2 + 1) / 2 is one above the cap, but both round to the same double
        N = 150000601
        a, b = 11103361, 1013214841
        assert a * b == (N * N + 1) // 2
        assert float(a * b) == float(N * N) / 2.0
        report = gcd_sum_truncated(IntegerSet.of([a, b]), N)
        assert report.truncated == 1.0
        assert report.tail_exact == pytest.approx(1 / math.sqrt(a * b), rel=1e-12)


class TestBounds:
    def test_hand_product(self):
        M = IntegerSet.of([2, 3])
        expected = 2 ** -0.2 * (1 + 2 / (2 ** 0.4 - 1)) * (1 + 2 / (3 ** 0.4 - 1)) * 2
        assert tail_bound(M, 2, 0.1) == pytest.approx(expected, rel=1e-12)

    def test_decreasing_in_N(self):
        M = IntegerSet.of([12, 16, 18, 24])
        assert tail_bound(M, 100, 0.1) < tail_bound(M, 10, 0.1)

    def test_small_eta_limit(self):
        M = IntegerSet.of([2, 3])
        table = sieve(10)
        limit = (1 + 2 / (math.sqrt(2) - 1)) * (1 + 2 / (math.sqrt(3) - 1)) * 2
        assert tail_bound(M, 1, 1e-9, table) == pytest.approx(limit, rel=1e-7)
        assert tail_product(1, 0.1, table) == 1.0

    @pytest.mark.parametrize("eta", [0.0, 0.5, -0.1, 0.7])
    def test_eta_range(self, eta):
        with pytest.raises(InvalidArgumentError):
            tail_bound(IntegerSet.of([2, 3]), 2, eta)

    def test_lemma_rate_at_e_e2(self):
        K = math.exp(math.exp(2))
        expected = math.exp(2 * math.sqrt(2) * math.sqrt(math.exp(2) * math.log(2) / 2))
        assert lemma_rate(K) == pytest.approx(expected, rel=1e-12)
        assert lemma_rate(K) == pytest.approx(92.3, abs=0.1)

    @pytest.mark.parametrize("K", [2, 10, 15])
    def test_lemma_rate_domain(self, K):
        with pytest.raises(DomainError) as err:
            lemma_rate(K)
        assert "log_3" in str(err.value)

    def test_lemma_rate_increasing(self):
        values = [lemma_rate(10 ** k) for k in range(4, 13)]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestConstruction:
    def test_small_feasible_case(self, small_table):
        M = construct_candidate_set(4, 3, 12, 200, seed=1, table=small_table)
        assert set(M.elements) <= {12, 16, 18, 24}
        assert len(M) == 4

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_hypotheses_hold(self, small_table, seed):
        K = len(smooth_integers(500, 1000, 7, small_table)) // 2
        M = construct_candidate_set(K, 7, 500, 500, seed=seed, table=small_table)
        assert len(M) == K
        assert M.is_dyadic()
        assert all(500 <= m <= 1000 for m in M.elements)
        assert set_smoothness(M, small_table) <= 7

    def test_deterministic(self, small_table):
        a = construct_candidate_set(20, 11, 1000, 300, seed=5, table=small_table)
        b = construct_candidate_set(20, 11, 1000, 300, seed=5, table=small_table)
        assert a.elements == b.elements

    def test_beats_random_subsets(self, small_table):
        y, c = 11, 1000
        pool = smooth_integers(c, 2 * c, y, small_table)
        K = len(pool) // 2
        M = construct_candidate_set(K, y, c, 2000, seed=0, table=small_table)
        rng = np.random.default_rng(0)
        baseline = np.mean(
            [gcd_sum(IntegerSet.of(sorted(rng.choice(pool, size=K, replace=False).tolist()))) for _ in range(100)]
        )
        assert gcd_sum(M) > baseline

    def test_infeasible(self, small_table):
        with pytest.raises(InfeasibleError):
            construct_candidate_set(10, 2, 100, 10, seed=0, table=small_table)

    def test_pair_matrix_small_values(self):
        pair = pair_matrix([12, 16, 18])
        expected = np.array(
            [[1.0, math.sqrt(4 / 48), math.sqrt(6 / 36)],
             [math.sqrt(4 / 48), 1.0, math.sqrt(2 / 144)],
             [math.sqrt(6 / 36), math.sqrt(2 / 144), 1.0]]
        )
        np.testing.assert_allclose(pair, expected, rtol=1e-12)

    def test_pair_matrix_above_int64_products(self):
        pair = pair_matrix([2 ** 40, 3 * 2 ** 40, 2 ** 41])
        assert pair[0, 1] == pytest.approx(math.sqrt(1 / 3), rel=1e-12)
        assert pair[0, 2] == pytest.approx(math.sqrt(1 / 2), rel=1e-12)
        assert pair[1, 2] == pytest.approx(math.sqrt(1 / 6), rel=1e-12)
        np.testing.assert_array_equal(pair, pair.T)
        np.testing.assert_array_equal(np.diag(pair), np.ones(3))

    def test_pair_matrix_lcm_overflow(self):
        with pytest.raises(ArithmeticOverflowError):
            pair_matrix([2 ** 40, 3 ** 25])

    def test_window_above_fast_path(self, small_table):
        M = construct_candidate_set(2, 2, 2 ** 32, 10, seed=0, table=small_table)
        assert M.elements == (2 ** 32, 2 ** 33)
        assert gcd_sum(M) == pytest.approx((2 + 2 * math.sqrt(1 / 2)) / 2, rel=1e-12)

    def test_smoothness_exponent(self):
        K = 10 ** 6
        assert smoothness_exponent(17, K) == pytest.approx(math.log(17) / math.log(math.log(K)))
        assert smoothness_exponent(3, 2) == math.inf
