"""The coprime-product family: pools, cardinality bounds, enumeration."""

import math

import pytest

from rmflab.errors import DomainError, InfeasibleError
from rmflab.numbercore import build_construction, build_sieve


def test_toy_family_exact_vs_binomial_bound():
    # N=4000: L ~ 570, Y ~ 7; pools are real and small enough to enumerate
    family, report = build_construction(4000, k=2, nu=1)
    assert report.small_pool_size > 0 and report.large_pool_size > 0
    assert report.max_element <= 4000
    assert report.exact_family_size is not None
    # every family member comes from distinct primes, so the exact count is
    # the product of the pool binomials; the reported bound uses the smaller
    # Chebyshev-style pool estimates L', Y'
    assert report.exact_family_size >= report.family_lower_bound
    assert report.exact_family_size == (
        math.comb(report.small_pool_size, 2) * math.comb(report.large_pool_size, 2))


def test_family_elements_within_n():
    family, report = build_construction(8000, k=2, nu=1)
    worst = (int(family.small_primes[-1]) * int(family.large_primes[-1]))
    assert worst <= 8000 * 1  # q * p' <= L^nu * Y = N
    assert report.max_element == worst


def test_multiplicity_product_k1():
    _, report = build_construction(4000, k=1, nu=1)
    assert report.multiplicity_product == 1


def test_multiplicity_product_vs_lower_bound():
    for k, nu in ((2, 1), (3, 1), (2, 2)):
        try:
            _, report = build_construction(10**5, k=k, nu=nu)
        except (DomainError, InfeasibleError):
            continue
        assert report.multiplicity_product >= report.multiplicity_lower_bound
        expect = math.prod(math.comb(nu * (k - j), nu) for j in range(k))
        assert report.multiplicity_product == expect


def test_nu_recipe_reported():
    _, report = build_construction(4000, k=2, nu=1)
    L = math.log(4000) ** 3
    assert report.nu_recipe == math.floor(2 / (30 * math.log(L)))


def test_y_too_small_is_domain_error():
    with pytest.raises(DomainError):
        build_construction(100, k=2, nu=1)   # Y = 100/L < 4


def test_pool_smaller_than_required_is_infeasible():
    # Y = 4000/L ~ 7 passes the sanity check, but nu*k = 50 distinct primes
    # cannot come out of [L/2, L]
    with pytest.raises(InfeasibleError) as err:
        build_construction(4000, k=50, nu=1)
    assert "[" in str(err.value)   # failing interval named


def test_prime_list_bounds():
    family, _ = build_construction(4000, k=2, nu=1)
    L, Y = family.L, family.Y
    assert all(L / 2 <= p <= L for p in family.small_primes.tolist())
    assert all(Y / 2 <= p <= Y for p in family.large_primes.tolist())


def test_l_prime_y_prime_definition():
    family, _ = build_construction(4000, k=2, nu=1)
    assert family.L_prime == math.ceil(family.L / (3 * math.log(family.L)))
    assert family.Y_prime == math.ceil(family.Y / (3 * math.log(family.Y)))


def test_reuses_supplied_sieve():
    sieve = build_sieve(1000)
    family, _ = build_construction(4000, k=2, nu=1, sieve=sieve)
    # supplied sieve is too small; a bigger one is built internally
    assert family.small_primes[-1] > 1000 / 2
