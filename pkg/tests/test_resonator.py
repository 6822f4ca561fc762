import math

import numpy as np
import pytest

from src.arith import factorize, sieve
from src.resonator import (
    IntegerSet,
    Resonator,
    ResonatorMeta,
    ResonatorStyle,
    bin_index,
    build_binned_resonator,
    build_hough_resonator,
    build_multiplicative_resonator,
    diagonal_pair_sum,
    diagonal_sums,
    dump_integer_set,
    dump_resonator,
    load_integer_set,
    load_resonator,
    mesh_ratio,
    min_x_for_nonempty_window,
    default_lambda,
    default_window,
    prime_weight,
)
from src.utils.errors import ArithmeticOverflowError, InvalidArgumentError, OutOfRangeError


class TestHough:
    def test_prime_weight(self):
        assert prime_weight(101, 10.0) == pytest.approx(10 / (math.sqrt(101) * math.log(101)), rel=1e-15)
        assert prime_weight(101, 10.0) == pytest.approx(0.21562, abs=5e-5)

    def test_default_window_at_lambda_10(self):
        lo, hi = default_window(10.0)
        assert lo == pytest.approx(100.0)
        assert hi == pytest.approx(200.6, abs=0.05)

    def test_lambda_override_selects_window(self, table):
        R = build_hough_resonator(1000.0, 2, table, lam_override=10.0)
        primes = [n for n in R.ns.tolist() if n > 1]
        assert primes == sieve(200).primes_between(101, 199).tolist()
        assert R.weight_of(101) == pytest.approx(0.21562, abs=5e-5)
        assert not R.meta.default_regime

    def test_support_factors_lie_in_window(self, table):
        R = build_hough_resonator(5000.0, 3, table, window_override=(3, 13))
        assert R.ns[0] == 1
        for n in R.ns.tolist():
            assert n <= 5000 / 3
            assert all(3 <= p <= 13 for p, _ in factorize(n, table).factors)

    def test_complete_multiplicativity(self, table):
        R = build_hough_resonator(5000.0, 3, table, window_override=(3, 13))
        weights = dict(R.support)
        for m in R.ns.tolist():
            for n in R.ns.tolist():
                if m * n in weights:
                    assert weights[m * n] == pytest.approx(weights[m] * weights[n], rel=1e-12)

    def test_empty_default_window_gives_unit_resonator(self, table):
        # lam(x) < e^2 for every desk-scale x, so the default window is empty
        R = build_hough_resonator(5000.0, 30, table)
        assert R.ns.tolist() == [1]
        assert R.weights.tolist() == [1.0]
        assert R.meta.window_empty and R.meta.default_regime

    def test_rejects_small_x(self, table):
        with pytest.raises(InvalidArgumentError):
            build_hough_resonator(10.0, 5, table)
        with pytest.raises(InvalidArgumentError):
            build_hough_resonator(10.0, 20, table)
        with pytest.raises(InvalidArgumentError):
            default_lambda(2.0)

    def test_window_beyond_sieve(self):
        with pytest.raises(OutOfRangeError):
            build_hough_resonator(1e6, 2, sieve(100), window_override=(50, 500))

    def test_min_x_for_nonempty_window(self, table):
        x = min_x_for_nonempty_window(table)
        lam = default_lambda(x)
        lo, hi = default_window(lam * (1 + 1e-9))
        assert len(table.primes_between(lo, hi)) >= 1
        lo, hi = default_window(lam * 0.999)
        assert len(table.primes_between(lo, hi)) == 0


class TestBinned:
    def test_fine_mesh_keeps_every_element(self):
        M = IntegerSet.of(range(8, 16))
        R = build_binned_resonator(M, 1000.0)
        assert R.ns.tolist() == list(range(8, 16))
        assert R.weights.tolist() == [1.0] * 8
        assert R.sign == -1

    def test_singleton(self):
        R = build_binned_resonator(IntegerSet.of([5]), 100.0)
        assert R.support == [(5, 1.0)]

    @pytest.mark.parametrize("seed", range(50))
    def test_squared_weights_sum_to_size(self, seed):
        rng = np.random.default_rng(seed)
        values = rng.choice(np.arange(1000, 5000), size=int(rng.integers(1, 200)), replace=False)
        M = IntegerSet.of(values.tolist())
        T = float(rng.choice([20.0, 100.0, 1e3, 1e4]))
        R = build_binned_resonator(M, T)
        assert int(round(float(np.sum(R.weights ** 2)))) == len(M)
        assert sum(R.meta.bin_sizes) == len(M)
        assert set(R.ns.tolist()) <= set(M.elements)

    def test_bin_index_partitions(self):
        T = 50.0
        q = mesh_ratio(T)
        for m in range(1, 3000):
            j = bin_index(m, T)
            assert math.pow(q, j) <= m < math.pow(q, j + 1)

    def test_coarse_mesh_merges(self):
        R = build_binned_resonator(IntegerSet.of([100, 101, 102]), 2.0)
        # log 2 / 2 ~ 0.35 relative width puts all three in one bin
        assert R.support == [(100, math.sqrt(3.0))]


class TestDiagonal:
    a, b = 0.7, 0.5

    def toy(self):
        return build_multiplicative_resonator(6.0, {2: self.a, 3: self.b})

    def test_toy_support(self):
        R = self.toy()
        assert R.ns.tolist() == [1, 2, 3, 4, 6]

    def test_hand_expansion(self):
        a, b = self.a, self.b
        sums = diagonal_sums(self.toy(), 2)
        sum_r2 = 1 + a ** 2 + b ** 2 + a ** 4 + (a * b) ** 2
        assert sums.sum_r2 == pytest.approx(sum_r2, rel=1e-14)
        assert sums.sum_rk == pytest.approx(1 + a, rel=1e-14)
        assert sums.i2_diag == pytest.approx(sum_r2 + a * (1 + a ** 2 + b ** 2), rel=1e-14)

    def test_unit_resonator(self, table):
        R = build_hough_resonator(5000.0, 30, table)
        sums = diagonal_sums(R, 30)
        assert (sums.sum_r2, sums.sum_rk, sums.i2_diag) == (1.0, 1.0, 1.0)

    @pytest.mark.parametrize("N", [1, 5, 17, 60])
    def test_identity_matches_brute_force(self, table, N):
        R = build_hough_resonator(5000.0, 3, table, window_override=(3, 13))
        assert diagonal_sums(R, N).i2_diag == pytest.approx(diagonal_pair_sum(R, N), rel=1e-10)

    def test_binned_is_rejected(self):
        R = build_binned_resonator(IntegerSet.of([3, 4]), 100.0)
        with pytest.raises(InvalidArgumentError):
            diagonal_sums(R, 3)


class TestTypes:
    def test_integer_set_validation(self):
        with pytest.raises(InvalidArgumentError):
            IntegerSet.of([3, 3])
        with pytest.raises(InvalidArgumentError):
            IntegerSet((0, 1))
        with pytest.raises(ArithmeticOverflowError):
            IntegerSet((1, 2 ** 63))
        assert IntegerSet.of([12, 18, 24]).is_dyadic()
        assert not IntegerSet.of([5, 11]).is_dyadic()

    def test_resonator_validation(self):
        meta = ResonatorMeta(style=ResonatorStyle.BINNED, T=10.0)
        with pytest.raises(InvalidArgumentError):
            Resonator(ns=np.array([2, 1]), weights=np.array([1.0, 1.0]), meta=meta)
        with pytest.raises(InvalidArgumentError):
            Resonator(ns=np.array([1, 2]), weights=np.array([1.0, 0.0]), meta=meta)

    def test_resonator_file_round_trip(self, tmp_path, table):
        R = build_hough_resonator(5000.0, 3, table, window_override=(3, 13))
        path = tmp_path / "R.txt"
        dump_resonator(R, path)
        S = load_resonator(path)
        assert np.array_equal(R.ns, S.ns)
        assert np.array_equal(R.weights, S.weights)
        assert S.style is ResonatorStyle.HOUGH
        assert dict(S.meta.prime_weights) == dict(R.meta.prime_weights)

    def test_integer_set_file(self, tmp_path):
        path = tmp_path / "M.txt"
        dump_integer_set(IntegerSet.of([4, 9, 16]), path)
        assert load_integer_set(path).elements == (4, 9, 16)
        path.write_text("# comment\n5\n\n7\n")
        assert load_integer_set(path).elements == (5, 7)
        path.write_text("5\nseven\n")
        with pytest.raises(InvalidArgumentError):
            load_integer_set(path)
