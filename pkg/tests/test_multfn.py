import cmath
import math

import numpy as np
import pytest

from src.multfn import (
    CMFunction,
    check_Fc,
    constant_one,
    dump_function,
    evaluate,
    load_function,
    minimal_arc,
    omega_max,
    sample,
    wrap_angle,
)
from src.utils.errors import InvalidArgumentError, OutOfRangeError


def test_wrap_angle_range():
    assert wrap_angle(math.pi) == math.pi
    assert wrap_angle(-math.pi) == math.pi
    assert wrap_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert wrap_angle(0.25) == pytest.approx(0.25)


def test_constant_one(table):
    f = constant_one(table, 100)
    assert np.allclose(f.values_upto(50)[1:], 1.0)
    assert f.is_real


def test_complete_multiplicativity(random_f):
    for m, n in [(2, 3), (4, 9), (12, 35), (97, 101), (64, 81)]:
        assert evaluate(random_f, m * n) == pytest.approx(evaluate(random_f, m) * evaluate(random_f, n), abs=1e-12)
    assert evaluate(random_f, 1) == 1


def test_complete_multiplicativity_random_pairs(random_f):
    rng = np.random.default_rng(2024)
    limit = random_f.domain_limit
    for _ in range(1000):
        m = int(rng.integers(1, limit + 1))
        n = int(rng.integers(1, limit // m + 1))
        assert abs(evaluate(random_f, m * n) - evaluate(random_f, m) * evaluate(random_f, n)) <= 1e-10


def test_values_are_unimodular(random_f):
    values = random_f.values_upto(5000)[1:]
    assert np.allclose(np.abs(values), 1.0, atol=1e-13)


def test_angles_upto_matches_pointwise(random_f):
    angles = random_f.angles_upto(300)
    for n in (1, 2, 30, 128, 255, 299):
        assert angles[n] == pytest.approx(random_f.angle(n), abs=1e-12)


def test_domain_is_enforced(table):
    f = sample("random_unimodular", 1, 100, table)
    with pytest.raises(OutOfRangeError):
        f.angle(101)
    with pytest.raises(InvalidArgumentError):
        f.angle(0)
    with pytest.raises(OutOfRangeError):
        CMFunction(prime_angles={}, domain_limit=table.limit + 1, table=table)


def test_real_detection(table):
    liouville = CMFunction(prime_angles={p: math.pi for p in table.primes_upto(50).tolist()}, domain_limit=50, table=table)
    assert liouville.is_real
    assert evaluate(liouville, 12) == pytest.approx(-1.0)
    assert not sample("random_unimodular", 3, 50, table).is_real


def test_sampling_is_seeded(table):
    a = sample("random_unimodular", 11, 500, table)
    b = sample("random_unimodular", 11, 500, table)
    c = sample("random_unimodular", 12, 500, table)
    assert dict(a.prime_angles) == dict(b.prime_angles)
    assert dict(a.prime_angles) != dict(c.prime_angles)


@pytest.mark.parametrize("c", [0.3, 0.7, 0.95])
def test_arc_constrained_sample_is_in_Fc(table, c):
    f = sample("arc_constrained", 5, 400, table, c=c, N=400)
    report, member = check_Fc(f, 400, c)
    assert member
    assert report.min_pair_re >= c - 1e-12


def test_arc_constrained_needs_c(table):
    with pytest.raises(InvalidArgumentError):
        sample("arc_constrained", 5, 100, table)


def test_omega_max():
    assert omega_max(1) == 1
    assert omega_max(8) == 3
    assert omega_max(15) == 3
    assert omega_max(16) == 4


def test_minimal_arc_constant(one):
    report = minimal_arc(one, 100)
    assert report.width == 0.0
    assert report.min_pair_re == 1.0


def test_minimal_arc_sign_function(table):
    f = CMFunction(prime_angles={2: math.pi}, domain_limit=10, table=table)
    report = minimal_arc(f, 3)
    assert report.width == pytest.approx(math.pi)
    assert report.min_pair_re == pytest.approx(-1.0)


def test_minimal_arc_against_brute_force(random_f):
    N = 40
    values = random_f.values_upto(N)[1:]
    brute = min((values[i] * np.conj(values[j])).real for i in range(N) for j in range(N))
    assert minimal_arc(random_f, N).min_pair_re == pytest.approx(brute, abs=1e-9)


def running_pair_minimum(f, N):
    """min Re f(n) conj(f(m)) over n, m <= k, for every k = 1..N (index k - 1)."""
    values = f.values_upto(N)[1:]
    out = np.empty(N)
    current = math.inf
    for k in range(N):
        current = min(current, float(np.min((values[k] * np.conj(values[: k + 1])).real)))
        out[k] = current
    return out


@pytest.mark.parametrize(
    "kind, seed, c",
    [
        ("random_unimodular", 7, 0.5),
        ("random_unimodular", 8, 0.1),
        ("arc_constrained", 3, 0.6),
        ("arc_constrained", 4, 0.95),
    ],
)
def test_check_Fc_against_brute_force_every_N(table, kind, seed, c):
    f = sample(kind, seed, 300, table, c=c, N=300)
    brute = running_pair_minimum(f, 300)
    for N in range(1, 301):
        report, member = check_Fc(f, N, c)
        assert report.min_pair_re == pytest.approx(brute[N - 1], abs=1e-9)
        n, m = report.witness_pair
        assert (evaluate(f, n) * evaluate(f, m).conjugate()).real == pytest.approx(report.min_pair_re, abs=1e-9)
        if abs(brute[N - 1] - c) > 1e-9:
            assert member == (brute[N - 1] >= c)


def test_check_Fc_real_function_every_N(table):
    angles = {p: math.pi for p in table.primes_upto(300).tolist()}
    liouville = CMFunction(prime_angles=angles, domain_limit=300, table=table)
    brute = running_pair_minimum(liouville, 300)
    assert brute[0] == pytest.approx(1.0)
    assert all(v == pytest.approx(-1.0) for v in brute[1:])
    for N in range(2, 301):
        report, member = check_Fc(liouville, N, 0.5)
        assert report.min_pair_re == pytest.approx(-1.0, abs=1e-12)
        assert not member


@pytest.mark.parametrize("c", [0.2, 0.8, 0.99])
@pytest.mark.parametrize("seed", range(50))
def test_arc_constrained_passes_brute_force(table, seed, c):
    f = sample("arc_constrained", seed, 300, table, c=c, N=300)
    values = f.values_upto(300)[1:]
    pair_re = (values[:, None] * np.conj(values[None, :])).real
    assert pair_re.min() >= c - 1e-12
    assert check_Fc(f, 300, c)[1]


def test_check_Fc_rejects_bad_c(one):
    for c in (0.0, 1.0, -0.2):
        with pytest.raises(InvalidArgumentError):
            check_Fc(one, 10, c)


def test_function_file_round_trip(tmp_path, random_f, table):
    f = sample("random_unimodular", 2, 300, table)
    path = tmp_path / "f.txt"
    dump_function(f, path)
    g = load_function(path, table)
    assert g.domain_limit == 300
    assert np.array_equal(f.values_upto(300), g.values_upto(300))


def test_function_file_rejects_composites(tmp_path, table):
    path = tmp_path / "bad.txt"
    path.write_text("4 0.5\n")
    with pytest.raises(InvalidArgumentError):
        load_function(path, table)
