"""Exactness of the divisor machinery against enumeration oracles, plus the
explicit inequality probes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle_helpers import (big_omega_trial, entropy, ordered_factorizations,
                            product_pair_count, segmented_prime_count,
                            small_omega_trial, trial_divisors)
from rmflab.errors import BudgetError, ContractError, DomainError
from rmflab.numbercore import (build_divisor_tables, build_sieve,
                               divisor_power_sum, hardy_ramanujan_count,
                               harmonic_square_partial_sum, irregular_sum,
                               permutation_pair_count, regularity_profile,
                               restricted_second_moment,
                               short_interval_regular_sum, tau_k,
                               tau_restricted, tau_restricted_regular)


# ---------------------------------------------------------------------------
# sieve


def test_sieve_m10():
    sieve = build_sieve(10)
    assert sieve.primes.tolist() == [2, 3, 5, 7]
    assert sieve.spf[9] == 3
    assert sieve.spf[10] == 2


def test_sieve_m2():
    assert build_sieve(2).primes.tolist() == [2]


def test_sieve_prime_count_vs_segmented_oracle(sieve_large):
    assert len(sieve_large.primes) == 78498 == segmented_prime_count(10**6)


def test_sieve_spf_divides_and_reconstructs(sieve_small):
    for n in range(2, 500):
        p = int(sieve_small.spf[n])
        assert n % p == 0
        rebuilt = 1
        for q, e in sieve_small.factorize(n):
            rebuilt *= q**e
        assert rebuilt == n


def test_sieve_budget_error():
    with pytest.raises(BudgetError):
        build_sieve(10**7, budget=10**6)


def test_divisors_match_trial(sieve_small):
    for n in (1, 2, 12, 97, 360, 1024):
        assert sieve_small.divisors(n) == trial_divisors(n)


# ---------------------------------------------------------------------------
# omega / tau tables


def test_omega_tables(tables_small):
    for n in range(1, 300):
        assert tables_small.big_omega[n] == big_omega_trial(n)
        assert tables_small.small_omega[n] == small_omega_trial(n)
        if tables_small.big_omega[n] == tables_small.small_omega[n]:
            # squarefree iff Omega == omega
            assert all(e == 1 for _, e in tables_small.sieve.factorize(n))


def test_tau_point_examples(sieve_small):
    assert all(tau_k(n, 1, sieve_small) == 1 for n in (1, 7, 12, 100))
    assert tau_k(4, 3, sieve_small) == 6
    assert tau_k(12, 2, sieve_small) == 6
    assert all(tau_k(1, k, sieve_small) == 1 for k in range(1, 6))


def test_tau_prime_power_binomial(sieve_small):
    for p in (2, 3, 5):
        for e in range(1, 8):
            if p**e > sieve_small.limit:
                continue
            for k in range(1, 6):
                assert tau_k(p**e, k, sieve_small) == math.comb(e + k - 1, e)


def test_tau_table_matches_point_function(tables_small):
    sieve = tables_small.sieve
    for k in range(1, 6):
        table = tables_small.tau_table(k)
        for n in range(1, 400):
            assert int(table[n]) == tau_k(n, k, sieve)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 40), st.integers(2, 40), st.integers(1, 4))
def test_tau_multiplicative_on_coprimes(m, n, k):
    if math.gcd(m, n) != 1:
        return
    sieve = build_sieve(m * n + 1)
    assert tau_k(m * n, k, sieve) == tau_k(m, k, sieve) * tau_k(n, k, sieve)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 1000), st.integers(1, 4), st.integers(1, 4))
def test_tau_product_inequality(n, j, k):
    sieve = build_sieve(max(n, 2))
    assert tau_k(n, j, sieve) * tau_k(n, k, sieve) <= tau_k(n, j * k, sieve)


def test_tau_submultiplicative_grid(sieve_large):
    rng = np.random.default_rng(7)
    for _ in range(300):
        m = int(rng.integers(1, 1001))
        n = int(rng.integers(1, 1001))
        j = int(rng.integers(1, 5))
        assert tau_k(m * n, j, sieve_large) <= tau_k(m, j, sieve_large) * tau_k(n, j, sieve_large)


# ---------------------------------------------------------------------------
# restricted divisor functions


def test_tau_restricted_examples(sieve_small):
    assert tau_restricted(12, 2, 12, sieve_small) == 6
    assert tau_restricted(6, 2, 3, sieve_small) == 2    # (2,3),(3,2)
    assert tau_restricted(12, 2, 5, sieve_small) == 2   # (3,4),(4,3)


def test_tau_restricted_inactive_equals_tau(sieve_small):
    for n in (1, 8, 36, 97, 200):
        for k in (1, 2, 3):
            assert tau_restricted(n, k, n, sieve_small) == tau_k(n, k, sieve_small)


def test_tau_restricted_regular_threshold_one(tables_small):
    # threshold barely above 1: factors must be 1 or prime
    profile = regularity_profile(tables_small, 1e-9, height=8)
    assert 1.0 < profile.threshold < 1.001
    sieve = tables_small.sieve
    assert tau_restricted_regular(16, 2, 8, 1e-9, profile, sieve) == 0
    assert tau_restricted_regular(4, 2, 8, 1e-9, profile, sieve) == 1  # (2,2)


def test_tau_restricted_regular_inactive(tables_small):
    # alpha > 1 lifts the threshold past log2(R): constraint inactive
    R = 200
    alpha = 1.3
    profile = regularity_profile(tables_small, alpha, height=R)
    assert profile.threshold >= math.log2(R)
    sieve = tables_small.sieve
    for n in (1, 30, 64, 180):
        assert (tau_restricted_regular(n, 3, R, alpha, profile, sieve)
                == tau_restricted(n, 3, R, sieve))


def test_tau_restricted_regular_height_mismatch(tables_small):
    profile = regularity_profile(tables_small, 0.5, height=100)
    with pytest.raises(ContractError):
        tau_restricted_regular(12, 2, 50, 0.5, profile, tables_small.sieve)


def test_profile_invariants(tables_small):
    profile = regularity_profile(tables_small, 0.5, height=300)
    for n in range(1, 301):
        member = tables_small.big_omega[n] <= profile.threshold
        assert bool(profile.regular[n]) == member
    regs = set(profile.regular_values().tolist())
    irrs = set(profile.irregular_values().tolist())
    assert regs | irrs == set(range(1, 301))
    assert not regs & irrs


# ---------------------------------------------------------------------------
# aggregate sums


def test_divisor_power_sum_example(tables_small):
    rep = divisor_power_sum(3, 2, 1, tables_small)
    assert rep.value == 5          # 1 + 2 + 2
    # exponent is k^s - 1 = 1 at (k, s) = (2, 1)
    assert abs(rep.bound - 3 * (2 * math.log(3))) < 1e-12
    assert rep.value <= rep.bound


def test_divisor_power_sum_k1_equality(tables_small):
    for M in (2, 10, 500):
        for s in (1, 2, 3):
            rep = divisor_power_sum(M, 1, s, tables_small)
            assert rep.value == M and rep.bound == M and rep.ratio == 1.0


def test_divisor_power_sum_vs_per_n_recomputation(sieve_mid, tables_mid):
    # two independent routes: convolution table vs point factorization
    M, k, s = 10_000, 3, 2
    rep = divisor_power_sum(M, k, s, tables_mid)
    direct = sum(tau_k(n, k, sieve_mid) ** s for n in range(1, M + 1))
    assert rep.value == direct


def test_harmonic_square_cutoff_one(sieve_small):
    rep = harmonic_square_partial_sum(3, 2.0, 1, sieve_small)
    assert rep.value == 1.0


def test_harmonic_square_zeta2(sieve_mid):
    rep = harmonic_square_partial_sum(1, 2.0, 10_000, sieve_mid)
    assert abs(rep.value - 1.6449) < 1e-4


def test_harmonic_square_termwise_oracle(sieve_small):
    # tau_2(m^2) by oracle divisor-pair counting on m^2
    def tau2(n):
        return len(trial_divisors(n))

    expect = math.fsum(tau2(m * m) / m**2 for m in range(1, 1001))
    rep = harmonic_square_partial_sum(2, 2.0, 1000, build_sieve(1000))
    assert abs(rep.value - expect) < 1e-12


def test_harmonic_square_monotone(sieve_small):
    values = [harmonic_square_partial_sum(2, 1.9, c, sieve_small).value
              for c in (10, 100, 1000)]
    assert values[0] <= values[1] <= values[2]


def test_harmonic_square_domain(sieve_small):
    with pytest.raises(DomainError):
        harmonic_square_partial_sum(2, 1.5, 10, sieve_small)


def test_short_interval_h0(tables_small):
    rep = short_interval_regular_sum(100, 0, 2, 1.3, tables_small)
    # threshold (ln 100)^1.3 > Omega(100)=4: tau_2(100)=9 counted
    assert rep.value == 9
    rep2 = short_interval_regular_sum(64, 0, 2, 0.1, tables_small)
    # threshold ~ 1.2 < Omega(64)=6: excluded
    assert rep2.value == 0


def test_short_interval_inactive_vs_oracle(tables_small):
    rep = short_interval_regular_sum(100, 10, 2, 1.3, tables_small)
    expect = sum(len(trial_divisors(m)) for m in range(100, 111))
    assert rep.value == expect


def test_short_interval_tiny_threshold():
    # M=2 is the only case with (ln M)^alpha < 1: nothing survives
    tables = build_divisor_tables(build_sieve(10))
    rep = short_interval_regular_sum(2, 5, 2, 0.5, tables)
    assert rep.value == 0


def test_irregular_sum_empty_when_inactive(tables_small):
    rep = irregular_sum(100, 2, 1.5, tables_small)
    assert rep.value == 0


def test_irregular_sum_vs_oracle(tables_small):
    alpha = 0.5
    threshold = math.log(100) ** alpha
    expect = sum(len(trial_divisors(m)) for m in range(1, 101)
                 if big_omega_trial(m) > threshold)
    rep = irregular_sum(100, 2, alpha, tables_small)
    assert rep.value == expect
    assert rep.comparator > 0


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9, 1.2])
@pytest.mark.parametrize("k", [1, 2, 4])
def test_partition_identity(tables_small, alpha, k):
    M = 500
    total = divisor_power_sum(M, k, 1, tables_small).value
    reg = short_interval_regular_sum(1, M - 1, k, alpha, tables_small, height=M)
    irr = irregular_sum(M, k, alpha, tables_small)
    assert reg.value + irr.value == total


def test_hardy_ramanujan_counts(tables_small):
    assert hardy_ramanujan_count(10, 0, tables_small).count == 1
    assert hardy_ramanujan_count(1, 0, tables_small).count == 1
    assert hardy_ramanujan_count(10, 1, tables_small).count == 7
    assert hardy_ramanujan_count(10, 2, tables_small).count == 2
    for nu in range(5):
        expect = sum(1 for n in range(1, 501) if small_omega_trial(n) == nu)
        assert hardy_ramanujan_count(500, nu, tables_small).count == expect


def test_hardy_ramanujan_comparators(tables_small):
    rep = hardy_ramanujan_count(1000, 3, tables_small, c=1.5, sigma=0.9)
    lnln = math.log(math.log(1000))
    assert rep.comparator == pytest.approx(
        1000 / math.log(1000) * (lnln + 1.5) ** 2 / 2)
    # nu_sigma = floor(0.9 * 3) = 2: both short-interval variants present
    assert rep.short_comparator == pytest.approx(1000 * (lnln + 1.5) ** 2 / 1)
    assert rep.short_sharpened == pytest.approx(1000 * (lnln + 1.5) ** 2 / 2)
    assert hardy_ramanujan_count(1000, 0, tables_small).comparator is None


# ---------------------------------------------------------------------------
# scalar inequality probes


def test_binomial_sandwich_grid():
    for n in range(2, 1001, 7):
        for r in range(1, n):
            c = math.comb(n, r)
            # lower bound exactly (integer comparison covers the r=1 equality)
            assert n**r <= c * r**r
            # upper bound has margin >= 1 in the log for all r
            assert math.log(c) <= r * (1.0 + math.log(n) - math.log(r))


def test_log_binomial_third_bound():
    for n in range(10, 1001, 11):
        for r in range(math.ceil(0.9 * n), n):
            assert math.log(math.comb(n, r)) <= n / 3.0
            assert entropy(r / n) < 1.0 / 3.0


def test_power_ratio_bound():
    # sup over x >= 1 of (a/x)^x <= exp(a/e); equality at x = a/e when a >= e
    xs = np.arange(1.0, 200.0, 1e-3)
    log_xs = np.log(xs)
    for a in (0.1, 1.0, 10.0, 100.0):
        log_vals = xs * (math.log(a) - log_xs)
        assert log_vals.max() <= a / math.e + 1e-9


# ---------------------------------------------------------------------------
# tuple-pair counters


def test_restricted_second_moment_examples():
    assert restricted_second_moment(3, 2) == 15
    assert restricted_second_moment(2, 2) == 6
    for N in (2, 5, 9):
        assert restricted_second_moment(N, 1) == N


def test_restricted_second_moment_vs_brute():
    for N in range(2, 9):
        for k in (2, 3):
            assert restricted_second_moment(N, k) == product_pair_count(N, k)


def test_restricted_second_moment_regular_vs_brute(tables_small):
    alpha = 0.4
    for N in (6, 10, 16):
        profile = regularity_profile(tables_small, alpha, height=N)
        pool = [int(v) for v in profile.regular_values()]
        expect = product_pair_count(N, 2, pool=pool)
        assert restricted_second_moment(N, 2, alpha, tables=tables_small) == expect


def test_restricted_second_moment_diagonal_bound():
    for N, k in ((3, 2), (4, 2), (5, 3)):
        assert restricted_second_moment(N, k) >= N**k


def test_restricted_second_moment_budget():
    with pytest.raises(BudgetError):
        restricted_second_moment(100, 5, budget=10**6)


def test_permutation_pair_count_vs_brute():
    from oracle_helpers import permutation_pair_count_brute

    for N in range(1, 8):
        for k in (1, 2, 3):
            assert permutation_pair_count(N, k) == permutation_pair_count_brute(N, k)


# ---------------------------------------------------------------------------
# CSV export


def test_divisor_tables_csv(tmp_path, tables_small):
    path = tmp_path / "tables.csv"
    small = build_divisor_tables(build_sieve(20))
    small.write_csv(path, 3)
    lines = path.read_text().splitlines()
    assert lines[0] == "n,omega,bigomega,tau_3"
    assert len(lines) == 21
    row12 = lines[12].split(",")
    assert row12 == ["12", "2", "3", str(tau_k(12, 3, tables_small.sieve))]
