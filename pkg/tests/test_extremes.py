import math

import numpy as np
import pytest
from scipy import integrate

from src.extremes import (
    GRID_ELEMENTS,
    ResonanceParams,
    TGrid,
    certify_resonance,
    e1,
    e1_inverse,
    eval_poly,
    eval_poly_grid,
    feasible_window_center,
    find_max,
    grid_rows,
    lipschitz_constant,
    range_check,
    tau_prime,
    thm11_inputs,
    thm11_predictor,
    thm12_predictor,
    xy_predictor,
)
from src.arith import smooth_integers
from src.moments import MomentStyle
from src.multfn import constant_one, sample
from src.resonator import IntegerSet
from src.utils.errors import DomainError, InvalidArgumentError, OutOfRangeError


def dense_max(f, N, t_lo, t_hi, spacing, chunk=20000):
    """max |S_t(N)| on a uniform grid, by direct matrix evaluation."""
    values = f.values_upto(N)[1:]
    logs = np.log(np.arange(1, N + 1, dtype=float))
    ts = np.arange(t_lo, t_hi + spacing / 2, spacing)
    best = 0.0
    for lo in range(0, len(ts), chunk):
        block = ts[lo : lo + chunk]
        sums = np.exp(1j * np.outer(block, logs)) @ values
        best = max(best, float(np.max(np.abs(sums))))
    return best


def e1_series(x, terms=60):
    total = -np.euler_gamma - math.log(x)
    term = 1.0
    for k in range(1, terms):
        term *= -x / k
        total -= term / k
    return total


class TestEvalPoly:
    def test_examples(self, one):
        assert eval_poly(one, 3, 0.0) == 3
        assert eval_poly(one, 1, 17.3) == 1
        assert abs(eval_poly(one, 2, math.pi / math.log(2))) < 1e-15

    def test_bounded_by_N(self, random_f):
        for t in (1.0, 13.7, 991.2):
            assert abs(eval_poly(random_f, 50, t)) <= 50

    def test_domain(self, table):
        f = constant_one(table, 10)
        with pytest.raises(OutOfRangeError):
            eval_poly(f, 11, 1.0)
        with pytest.raises(InvalidArgumentError):
            eval_poly(f, 0, 1.0)

    def test_grid_matches_direct(self, random_f):
        t0, dt, count = 1.0, 0.37, 5000
        grid = eval_poly_grid(random_f, 40, t0, dt, count, renormalize_every=100)
        for j in (0, 1, 99, 100, 2500, 4999):
            assert grid[j] == pytest.approx(eval_poly(random_f, 40, t0 + j * dt), abs=1e-10)

    def test_grid_rows_shrink_with_N(self):
        assert grid_rows(40, 100) == 100
        assert grid_rows(5000) * 5000 <= GRID_ELEMENTS
        assert grid_rows(5000) == GRID_ELEMENTS // 5000
        assert grid_rows(10 ** 8) == 1

    def test_grid_matches_direct_at_large_N(self, random_f):
        t0, dt, count = 1000.0, 0.01, 500
        assert grid_rows(20000) < count
        grid = eval_poly_grid(random_f, 20000, t0, dt, count)
        for j in (0, grid_rows(20000) - 1, grid_rows(20000), 499):
            assert grid[j] == pytest.approx(eval_poly(random_f, 20000, t0 + j * dt), abs=1e-7)

    def test_grid_empty(self, one):
        assert len(eval_poly_grid(one, 5, 1.0, 0.1, 0)) == 0


class TestGrid:
    def test_lipschitz_constant(self):
        assert lipschitz_constant(5) == pytest.approx(math.log(120))

    def test_certified_spacing(self):
        grid = TGrid.certified(100.0, 5, 0.01)
        assert grid.spacing == pytest.approx(0.01 / (5 * math.log(5)))
        points = grid.points()
        assert points[0] == 1.0 and points[-1] == 100.0

    def test_rejects_empty_range(self):
        with pytest.raises(InvalidArgumentError):
            TGrid(5.0, 5.0, 0.1)


class TestFindMax:
    def test_trivial_length(self, one):
        result = find_max(one, 1, 1000.0, 0.01)
        assert result.value == 1.0
        assert result.certified

    def test_matches_dense_scan(self, one):
        result = find_max(one, 5, 100.0, 0.01)
        dense = dense_max(one, 5, 1.0, 100.0, 1e-5)
        assert result.certified
        assert result.certified_gap <= 0.01
        assert abs(result.value - dense) <= 0.01
        assert dense <= result.value + result.certified_gap

    def test_dominates_samples(self, one, random_f):
        result = find_max(one, 30, 500.0, 0.05)
        assert result.value >= abs(eval_poly(one, 30, 1.0))
        assert result.value >= abs(eval_poly(one, 30, 500.0))
        sym = find_max(random_f, 12, 300.0, 0.05, symmetric=True)
        assert sym.value >= abs(eval_poly(random_f, 12, -1.0))
        assert sym.symmetric

    def test_small_budget_is_uncertified(self, one):
        result = find_max(one, 20, 1000.0, 1e-3, budget=10000)
        assert not result.certified
        assert result.value >= abs(eval_poly(one, 20, 1.0))

    def test_workers_do_not_change_result(self, random_f):
        serial = find_max(random_f, 25, 400.0, 0.05, workers=1)
        threaded = find_max(random_f, 25, 400.0, 0.05, workers=4)
        assert serial == threaded

    def test_rejects_bad_input(self, one):
        with pytest.raises(InvalidArgumentError):
            find_max(one, 5, 1.0, 0.1)
        with pytest.raises(InvalidArgumentError):
            find_max(one, 5, 100.0, 0.0)

    @pytest.mark.slow
    def test_finer_scan_never_beats_certificate(self, table):
        rng = np.random.default_rng(11)
        for i in range(20):
            N = int(rng.integers(2, 51))
            T = float(rng.uniform(20.0, 300.0))
            f = sample("random_unimodular", 100 + i, 1000, table)
            result = find_max(f, N, T, 0.5)
            dense = dense_max(f, N, 1.0, T, result.spacing / 10)
            assert dense <= result.value + result.certified_gap + 1e-12


class TestSpecialFunctions:
    def test_e1_at_one(self):
        assert e1(1.0) == pytest.approx(0.2193839, abs=1e-7)
        assert e1(1.0) == pytest.approx(e1_series(1.0), abs=1e-9)

    @pytest.mark.parametrize("A", [0.01, 0.1, 1.0, 5.0, 20.0])
    def test_round_trip(self, A):
        assert abs(e1_inverse(e1(A)) - A) <= 1e-8

    @pytest.mark.parametrize("A", [0.01, 0.1, 1.0, 5.0, 20.0])
    def test_tau_prime(self, A):
        quad, _ = integrate.quad(lambda u: math.exp(-u) / u ** 2, A, math.inf, epsabs=0, epsrel=1e-12)
        assert tau_prime(A) == pytest.approx(math.exp(-A) / A - e1(A), rel=1e-10)
        assert tau_prime(A) == pytest.approx(quad, rel=1e-8)

    def test_tau_prime_at_one(self):
        assert tau_prime(1.0) == pytest.approx(0.1484955, abs=1e-7)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            e1(0.0)
        with pytest.raises(DomainError):
            e1_inverse(-1.0)
        with pytest.raises(DomainError) as err:
            e1_inverse(1e3)
        assert err.value.hypothesis


class TestPredictors:
    def test_thm11_inputs(self):
        T = math.exp(100.0)
        N = math.exp(math.sqrt(100.0 * math.log(100.0)))
        inputs = thm11_inputs(T, N)
        assert inputs.tau == pytest.approx(1.0, rel=1e-12)
        assert e1(inputs.A) == pytest.approx(1.0, rel=1e-12)
        assert inputs.tau_prime == pytest.approx(math.exp(-inputs.A) / inputs.A - 1.0, rel=1e-9)

    def test_thm11_monotone_and_above_sqrt_N(self):
        T = 1e30
        values = [thm11_predictor(T, N).value for N in (1e3, 1e5, 1e7, 1e9)]
        assert values == sorted(values)
        for N, value in zip((1e3, 1e5, 1e7, 1e9), values):
            assert value >= math.sqrt(N)

    def test_thm12_factor(self):
        N = 1e4
        result = thm12_predictor(N * math.exp(20.0), N)
        expected = math.exp(math.sqrt(2.0) * math.sqrt(20.0 * math.log(math.log(20.0)) / math.log(20.0)))
        assert result.factor == pytest.approx(expected, rel=1e-10)
        assert result.factor == pytest.approx(45.97, abs=0.01)
        assert result.value == pytest.approx(100.0 * expected, rel=1e-10)
        assert result.o1_dropped

    def test_thm12_domain(self):
        with pytest.raises(DomainError):
            thm12_predictor(math.exp(math.e), 1.0)
        with pytest.raises(DomainError):
            thm12_predictor(10.0, 2.0)
        assert thm12_predictor(math.exp(math.e) * 1.001, 1.0).value > 0

    def test_range_check(self):
        checks = range_check(1e9, 1e4, 0.005)
        assert checks["in_range"] and checks["above_lower"] and checks["below_upper"]
        assert checks["range_upper"] == pytest.approx(math.sqrt(1e9))
        assert not range_check(1e9, 1e5, 0.005)["below_upper"]

    def test_xy_limits(self):
        assert xy_predictor(1e9, 1e4, 1 - 1e-12).value == pytest.approx(100.0, rel=1e-4)
        assert xy_predictor(1e9, 1e4, 0.5).value > 100.0
        with pytest.raises(DomainError):
            xy_predictor(1e9, 1e4, 1.0)

    def test_to_dict_flattens(self):
        data = thm12_predictor(1e9, 1e4).to_dict()
        assert data["name"] == "thm12"
        assert "in_range" in data and "inputs" not in data
        data = thm11_predictor(1e9, 1e4).to_dict()
        assert "A" in data and "tau_prime" in data


class TestCertify:
    def test_trivial_length(self, one):
        result = certify_resonance(one, 1, 100.0)
        assert result.observed == 1.0
        assert result.bound <= 1.0 + 1e-9
        assert result.passed

    def test_small_hough(self, random_f):
        params = ResonanceParams(window_override=(2, 7), tolerance=0.05)
        result = certify_resonance(random_f, 5, 200.0, params)
        assert result.passed
        assert result.to_dict()["pass"] is True
        assert result.sum_rk is not None

    def test_small_binned(self, one):
        M = IntegerSet.of([60, 64, 72, 75, 80, 81, 90, 96, 100, 108, 120])
        params = ResonanceParams(style=MomentStyle.THM12, integer_set=M, tolerance=0.05)
        result = certify_resonance(one, 4, 300.0, params)
        assert result.passed
        assert 0 < result.bound <= 4

    def test_domain_too_small(self, table):
        f = constant_one(table, 50)
        params = ResonanceParams(window_override=(2, 7))
        with pytest.raises(OutOfRangeError):
            certify_resonance(f, 5, 1000.0, params)

    def test_feasible_window_center(self, small_table):
        c = feasible_window_center(5, 7, small_table, 5)
        assert c == 5
        assert len(smooth_integers(c, 2 * c, 7, small_table)) >= 5

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [None, 1, 2, 3, 4, 5])
    def test_resonance_inequality(self, table, one, seed):
        f = one if seed is None else sample("random_unimodular", seed, 20000, table)
        params = ResonanceParams(window_override=(3, 13), tolerance=0.05, workers=4)
        result = certify_resonance(f, 30, 5000.0, params, table)
        assert result.search.certified
        assert result.passed

    @pytest.mark.slow
    def test_random_function_moderate(self, table):
        f = sample("random_unimodular", 3, 20000, table)
        params = ResonanceParams(window_override=(2, 11), tolerance=0.05, workers=4)
        assert certify_resonance(f, 20, 2000.0, params, table).passed
