"""Exact number-theoretic substrate.

Smallest-prime-factor sieve, omega tables, k-fold divisor functions and
their height/regularity-restricted variants, the divisor-sum aggregates
with their explicit comparators, and the tuple-pair second-moment counters.

All sums advertised as exact are exact: tables are int64 with a rigorous
overflow pre-check and an arbitrary-precision fallback, point values use
Python integers throughout.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

import numpy as np

from . import _kernels
from ._kernels import _pykernels
from .errors import BudgetError, ContractError, DomainError, InfeasibleError

DEFAULT_SIEVE_BUDGET = 10**8
DEFAULT_TUPLE_BUDGET = 10**9

_INT64_SAFE = 2**62


# ---------------------------------------------------------------------------
# sieve


@dataclass
class FactorSieve:
    """Smallest-prime-factor table for 2..limit plus the ascending primes.

    spf is indexed by n (spf[0] = 0, spf[1] = 1); spf[p] = p exactly at
    primes.
    """

    limit: int
    spf: np.ndarray
    primes: np.ndarray

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Factorization of n as [(p, e), ...] with p ascending."""
        if not 1 <= n <= self.limit:
            raise DomainError(f"n={n} outside sieve range [1, {self.limit}]")
        out = []
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def divisors(self, n: int) -> list[int]:
        """All divisors of n, ascending."""
        divs = [1]
        for p, e in self.factorize(n):
            divs = [d * p**j for d in divs for j in range(e + 1)]
        return sorted(divs)

    def big_omega(self, n: int) -> int:
        return sum(e for _, e in self.factorize(n))


def build_sieve(limit: int, budget: int = DEFAULT_SIEVE_BUDGET) -> FactorSieve:
    """Sieve smallest prime factors up to limit (inclusive)."""
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > budget:
        raise BudgetError(
            f"sieve limit {limit} exceeds memory budget {budget}")
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            sl = spf[p * p::p]
            sl[sl == 0] = p
    untouched = spf == 0
    spf[untouched] = np.arange(limit + 1, dtype=np.int32)[untouched]
    spf[0] = 0
    if limit >= 1:
        spf[1] = 1
    idx = np.arange(limit + 1, dtype=np.int64)
    primes = idx[2:][spf[2:] == idx[2:]]
    return FactorSieve(limit=limit, spf=spf, primes=primes)


# ---------------------------------------------------------------------------
# omega / tau tables


def _exact_table_sum(values: np.ndarray, power: int = 1) -> int:
    """Exact sum of values**power; stays in int64 only when provably safe."""
    if values.dtype == object:
        return sum(int(v) ** power for v in values)
    mx = int(values.max(initial=0))
    if mx**power * max(len(values), 1) < _INT64_SAFE:
        if power == 1:
            return int(values.sum(dtype=np.int64))
        return int((values.astype(np.int64) ** power).sum(dtype=np.int64))
    return sum(int(v) ** power for v in values)


@dataclass
class DivisorTables:
    """Sieved Omega/omega tables and on-demand tau_k tables up to limit."""

    limit: int
    sieve: FactorSieve
    big_omega: np.ndarray
    small_omega: np.ndarray
    _tau: dict = field(default_factory=dict, repr=False)

    def tau_table(self, k: int) -> np.ndarray:
        """Table of tau_k(n) for 0 <= n <= limit (entry 0 is 0).

        Built by k-1 Dirichlet convolutions with the all-ones function;
        falls back to object (arbitrary-precision) entries when int64 could
        overflow.
        """
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        if k in self._tau:
            return self._tau[k]
        if 1 not in self._tau:
            ones = np.ones(self.limit + 1, dtype=np.int64)
            ones[0] = 0
            self._tau[1] = ones
        start = max(j for j in self._tau if j <= k)
        table = self._tau[start]
        for j in range(start + 1, k + 1):
            table = self._convolve_ones(table)
            self._tau[j] = table
        return self._tau[k]

    def _convolve_ones(self, f: np.ndarray) -> np.ndarray:
        if f.dtype == object:
            return _pykernels.convolve_with_ones(f)
        max_f = int(f.max(initial=0))
        if max_f <= 1:
            # result is bounded by d(n) <= 2 sqrt(limit): always int64-safe
            return _kernels.convolve_with_ones(f)
        # g(n) = sum_{d|n} f(d) <= d(n) * max f; check before trusting int64
        max_d = int(self.tau_table(2).max(initial=1))
        if max_f * max_d >= _INT64_SAFE:
            return _pykernels.convolve_with_ones(f.astype(object))
        return _kernels.convolve_with_ones(f)

    def write_csv(self, path, k: int) -> None:
        """Export (n, omega, bigomega, tau_k) rows with a k-naming header."""
        tau = self.tau_table(k)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "omega", "bigomega", f"tau_{k}"])
            for n in range(1, self.limit + 1):
                writer.writerow([n, int(self.small_omega[n]),
                                 int(self.big_omega[n]), int(tau[n])])


def build_divisor_tables(sieve: FactorSieve) -> DivisorTables:
    """Omega (with multiplicity) and omega (distinct) tables via prime strides."""
    limit = sieve.limit
    big = np.zeros(limit + 1, dtype=np.int32)
    small = np.zeros(limit + 1, dtype=np.int32)
    for p in sieve.primes.tolist():
        small[p::p] += 1
        q = p
        while q <= limit:
            big[q::q] += 1
            q *= p
    return DivisorTables(limit=limit, sieve=sieve, big_omega=big,
                         small_omega=small)


# ---------------------------------------------------------------------------
# regularity profiles


@dataclass
class RegularityProfile:
    """Membership table of {m <= height : Omega(m) <= (ln height)^alpha}.

    Ties (equality) count as regular.  alpha may exceed 1: the paper-range
    (0,1) is a comparator concern, while an inactive threshold requires
    (ln M)^alpha >= log2(M), which no alpha < 1 can reach.
    """

    height: int
    alpha: float
    threshold: float
    regular: np.ndarray  # bool, indexed by n; entry 0 is False

    def regular_values(self) -> np.ndarray:
        return np.flatnonzero(self.regular)

    def irregular_values(self) -> np.ndarray:
        mask = ~self.regular
        mask[0] = False
        return np.flatnonzero(mask)


def regularity_profile(tables: DivisorTables, alpha: float,
                       height: int | None = None) -> RegularityProfile:
    """Build the regular/irregular split at the given height (default: table limit)."""
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    height = tables.limit if height is None else height
    if height > tables.limit:
        raise ContractError(
            f"profile height {height} exceeds table limit {tables.limit}")
    threshold = math.log(height) ** alpha
    regular = np.zeros(height + 1, dtype=bool)
    regular[1:] = tables.big_omega[1:height + 1] <= threshold
    return RegularityProfile(height=height, alpha=alpha, threshold=threshold,
                             regular=regular)


# ---------------------------------------------------------------------------
# divisor functions (point values, exact Python integers)


def tau_k(n: int, k: int, sieve: FactorSieve) -> int:
    """Number of ordered k-tuples of positive integers with product n."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    value = 1
    for _, e in sieve.factorize(n):
        value *= math.comb(e + k - 1, e)
    return value


def _tau_restricted_impl(n, k, usable):
    memo = {}

    def count(m, slots):
        if slots == 0:
            return 1 if m == 1 else 0
        key = (m, slots)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = 0
        for d in usable:
            if d > m:
                break
            if m % d == 0:
                total += count(m // d, slots - 1)
        memo[key] = total
        return total

    return count(n, k)


def tau_restricted(n: int, k: int, R: int, sieve: FactorSieve) -> int:
    """Ordered k-tuples with product n and every factor <= R.

    Recursive descent over the divisors of n, memoized on (remaining
    product, remaining slots).
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    usable = [d for d in sieve.divisors(n) if d <= R]
    return _tau_restricted_impl(n, k, usable)


def tau_restricted_regular(n: int, k: int, R: int, alpha: float,
                           profile: RegularityProfile,
                           sieve: FactorSieve) -> int:
    """Like tau_restricted but every factor must be alpha-regular at height R."""
    if profile.height != R:
        raise ContractError(
            f"profile height {profile.height} does not match R={R}")
    if profile.alpha != alpha:
        raise ContractError(
            f"profile alpha {profile.alpha} does not match alpha={alpha}")
    usable = [d for d in sieve.divisors(n) if d <= R and profile.regular[d]]
    return _tau_restricted_impl(n, k, usable)


# ---------------------------------------------------------------------------
# aggregate sums with comparators


@dataclass(frozen=True)
class DivisorPowerSum:
    value: int            # exact sum of tau_k(m)^s, m <= M
    bound: float          # M (2 ln M)^(k^s - 1), fully explicit
    ratio: float


def divisor_power_sum(M: int, k: int, s: int,
                      tables: DivisorTables) -> DivisorPowerSum:
    """Exact sum of tau_k(m)^s for m <= M against its explicit upper bound."""
    if M < 2:
        raise DomainError(f"M must be >= 2, got {M}")
    if M > tables.limit:
        raise ContractError(f"M={M} exceeds table limit {tables.limit}")
    tau = tables.tau_table(k)
    value = _exact_table_sum(tau[1:M + 1], power=s)
    bound = M * (2.0 * math.log(M)) ** (k**s - 1)
    return DivisorPowerSum(value=value, bound=bound, ratio=value / bound)


@dataclass(frozen=True)
class HarmonicSquareSum:
    value: float          # partial sum of tau_k(m^2) / m^sigma
    comparator: float     # k ** (10 k^{2/sigma}); inf when it overflows
    log_comparator: float


def harmonic_square_partial_sum(k: int, sigma: float, cutoff: int,
                                sieve: FactorSieve) -> HarmonicSquareSum:
    """Partial sum of tau_k(m^2)/m^sigma, termwise from factorizations."""
    if not (9.0 / 5.0 <= sigma <= 2.0):
        raise DomainError(f"sigma must lie in [9/5, 2], got {sigma}")
    if cutoff < 1 or cutoff > sieve.limit:
        raise DomainError(
            f"cutoff must lie in [1, sieve limit {sieve.limit}], got {cutoff}")
    terms = []
    for m in range(1, cutoff + 1):
        tau_sq = 1
        for _, e in sieve.factorize(m):
            tau_sq *= math.comb(2 * e + k - 1, 2 * e)
        terms.append(tau_sq / m**sigma)
    log_comp = 10.0 * k ** (2.0 / sigma) * math.log(k) if k > 1 else 0.0
    comparator = math.exp(log_comp) if log_comp < 700 else math.inf
    return HarmonicSquareSum(value=math.fsum(terms), comparator=comparator,
                             log_comparator=log_comp)


@dataclass(frozen=True)
class ShortIntervalSum:
    value: int            # exact sum of tau_k over regular m in [M, M+H]
    comparator: float     # H exp(20 k^{1/sigma^2} lnln M)


def short_interval_regular_sum(M: int, H: int, k: int, alpha: float,
                               tables: DivisorTables, sigma: float = 1.0,
                               height: int | None = None) -> ShortIntervalSum:
    """Exact regular-part divisor sum over [M, M+H].

    The regularity threshold is (ln height)^alpha with height defaulting to
    M; the partition-identity caller fixes height at the interval top.
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if M < 1 or H < 0:
        raise DomainError(f"need M >= 1 and H >= 0, got M={M}, H={H}")
    if M + H > tables.limit:
        raise ContractError(
            f"M+H={M + H} exceeds table limit {tables.limit}")
    height = M if height is None else height
    threshold = math.log(height) ** alpha if height >= 2 else 0.0
    tau = tables.tau_table(k)
    window = slice(M, M + H + 1)
    mask = tables.big_omega[window] <= threshold
    value = _exact_table_sum(tau[window][mask])
    lnln = math.log(math.log(M)) if M >= 3 else float("nan")
    comparator = H * math.exp(20.0 * k ** (1.0 / sigma**2) * lnln) if M >= 3 else float("nan")
    return ShortIntervalSum(value=value, comparator=comparator)


@dataclass(frozen=True)
class IrregularSum:
    value: int            # exact sum of tau_k over irregular m <= M
    comparator: float     # M exp(-(ln M)^alpha / (4 lnln M))


def irregular_sum(M: int, k: int, alpha: float,
                  tables: DivisorTables) -> IrregularSum:
    """Exact divisor sum over the alpha-irregular integers up to M."""
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if M > tables.limit:
        raise ContractError(f"M={M} exceeds table limit {tables.limit}")
    threshold = math.log(M) ** alpha if M >= 2 else 0.0
    tau = tables.tau_table(k)
    mask = tables.big_omega[1:M + 1] > threshold
    value = _exact_table_sum(tau[1:M + 1][mask])
    if M >= 3:
        comparator = M * math.exp(-math.log(M) ** alpha
                                  / (4.0 * math.log(math.log(M))))
    else:
        comparator = float("nan")
    return IrregularSum(value=value, comparator=comparator)


@dataclass(frozen=True)
class HardyRamanujanCount:
    count: int                      # |{n <= x : omega(n) = nu}|
    comparator: float | None        # (x/ln x)(lnln x + c)^{nu-1}/(nu-1)!
    short_comparator: float | None  # H(lnln x + c)^{nu_sigma}/(nu_sigma-1)!
    short_sharpened: float | None   # same numerator over (nu-1)! (open question)


def hardy_ramanujan_count(x: int, nu: int, tables: DivisorTables,
                          c: float = 1.5, sigma: float | None = None,
                          H: float | None = None) -> HardyRamanujanCount:
    """Exact count of n <= x with exactly nu distinct prime factors.

    c is a report parameter only (the classical bound leaves it
    unspecified).  When sigma is given, both short-interval comparator
    variants are reported: the proven (nu_sigma-1)! denominator and the
    conjecturally sharpened (nu-1)! one; neither is asserted.
    """
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu}")
    if x < 1 or x > tables.limit:
        raise DomainError(
            f"x must lie in [1, table limit {tables.limit}], got {x}")
    count = int(np.count_nonzero(tables.small_omega[1:x + 1] == nu))
    comparator = None
    short_comp = None
    short_sharp = None
    if nu >= 1 and x >= 3:
        lnln = math.log(math.log(x))
        comparator = (x / math.log(x)) * (lnln + c) ** (nu - 1) / math.factorial(nu - 1)
        if sigma is not None:
            length = x if H is None else H
            nu_sigma = math.floor(sigma * nu)
            if nu_sigma >= 1:
                short_comp = length * (lnln + c) ** nu_sigma / math.factorial(nu_sigma - 1)
                short_sharp = length * (lnln + c) ** nu_sigma / math.factorial(nu - 1)
    return HardyRamanujanCount(count=count, comparator=comparator,
                               short_comparator=short_comp,
                               short_sharpened=short_sharp)


# ---------------------------------------------------------------------------
# lower-bound construction family


@dataclass(frozen=True)
class ConstructionFamily:
    """Prime pools behind the coprime-product family used for the
    second-moment lower bound.

    Elements of the base collection are products of nu distinct primes from
    [L/2, L] times one prime from [Y/2, Y]; family members multiply k such
    pairwise-coprime elements.
    """

    N: int
    k: int
    nu: int
    L: float
    L_prime: int
    Y: float
    Y_prime: int
    small_primes: np.ndarray  # primes in [L/2, L]
    large_primes: np.ndarray  # primes in [Y/2, Y]


@dataclass(frozen=True)
class ConstructionReport:
    small_pool_size: int
    large_pool_size: int
    nu_recipe: int                  # floor(k / (30 ln L))
    binom_small: int                # C(L', nu*k)
    binom_large: int                # C(Y', k)
    family_lower_bound: int         # product of the two binomials
    multiplicity_product: int       # prod_j C(nu(k-j), nu)
    multiplicity_lower_bound: float  # (k/e)^(k nu)
    max_element: int                # largest q*p'; must be <= N
    exact_family_size: int | None   # full enumeration when pools are small


def build_construction(N: int, k: int, nu: int,
                       sieve: FactorSieve | None = None,
                       enumeration_limit: int = 200_000,
                       ) -> tuple[ConstructionFamily, ConstructionReport]:
    """Materialize the prime pools and the cardinality report.

    Raises DomainError when Y = N/L^nu < 4 and InfeasibleError when a pool
    is empty or smaller than the primes it must supply.
    """
    if k < 1 or nu < 1:
        raise DomainError(f"k and nu must be >= 1, got k={k}, nu={nu}")
    if N < 3:
        raise DomainError(f"N must be >= 3, got {N}")
    L = math.log(N) ** 3
    if L <= 1:
        raise InfeasibleError(f"L = (ln N)^3 = {L:.3f} <= 1 at N={N}")
    Y = N / L**nu
    if Y < 4:
        raise DomainError(
            f"Y = N/L^nu = {Y:.3f} < 4; choose larger N or smaller nu")
    L_prime = math.ceil(L / (3.0 * math.log(L)))
    Y_prime = math.ceil(Y / (3.0 * math.log(Y)))
    top = math.ceil(max(L, Y))
    if sieve is None or sieve.limit < top:
        sieve = build_sieve(max(top, 2))
    primes = sieve.primes
    small = primes[(primes >= L / 2) & (primes <= L)]
    large = primes[(primes >= Y / 2) & (primes <= Y)]
    if len(small) == 0:
        raise InfeasibleError(f"no primes in [{L / 2:.2f}, {L:.2f}]")
    if len(large) == 0:
        raise InfeasibleError(f"no primes in [{Y / 2:.2f}, {Y:.2f}]")
    if len(small) < nu * k:
        raise InfeasibleError(
            f"pool [{L / 2:.2f}, {L:.2f}] has {len(small)} primes, "
            f"need nu*k = {nu * k} distinct ones")
    if len(large) < k:
        raise InfeasibleError(
            f"pool [{Y / 2:.2f}, {Y:.2f}] has {len(large)} primes, need k = {k}")
    max_q = math.prod(int(p) for p in small[-nu:])
    max_element = max_q * int(large[-1])
    if max_element > N:
        raise InfeasibleError(
            f"largest base element {max_element} exceeds N={N}")
    family = ConstructionFamily(N=N, k=k, nu=nu, L=L, L_prime=L_prime, Y=Y,
                                Y_prime=Y_prime, small_primes=small,
                                large_primes=large)
    binom_small = math.comb(L_prime, nu * k)
    binom_large = math.comb(Y_prime, k)
    mult_product = math.prod(math.comb(nu * (k - j), nu) for j in range(k))
    nu_recipe = math.floor(k / (30.0 * math.log(L)))
    exact_size = None
    if math.comb(len(small), nu * k) * math.comb(len(large), k) <= enumeration_limit:
        exact_size = _enumerate_family(small, large, k, nu)
    report = ConstructionReport(
        small_pool_size=len(small), large_pool_size=len(large),
        nu_recipe=nu_recipe, binom_small=binom_small, binom_large=binom_large,
        family_lower_bound=binom_small * binom_large,
        multiplicity_product=mult_product,
        multiplicity_lower_bound=(k / math.e) ** (k * nu),
        max_element=max_element, exact_family_size=exact_size)
    return family, report


def _enumerate_family(small, large, k, nu):
    """Exact family cardinality: distinct products of nu*k small primes and
    k large primes (each family member is determined by its prime support)."""
    small = [int(p) for p in small]
    large = [int(p) for p in large]
    products = set()
    for qs in combinations(small, nu * k):
        q = math.prod(qs)
        for ps in combinations(large, k):
            products.add(q * math.prod(ps))
    return len(products)


# ---------------------------------------------------------------------------
# tuple-pair counters (moment identities)


def restricted_second_moment(N: int, k: int, alpha: float | None = None,
                             tables: DivisorTables | None = None,
                             budget: int = DEFAULT_TUPLE_BUDGET) -> int:
    """Sum over A of tau_{k,N;alpha}(A)^2: ordered pairs of k-tuples over the
    (optionally alpha-regular) integers <= N with equal products.

    Product -> count accumulation in exact Python integers.
    """
    if N < 1 or k < 1:
        raise DomainError(f"need N >= 1 and k >= 1, got N={N}, k={k}")
    if alpha is None:
        pool = list(range(1, N + 1))
    else:
        if tables is None or tables.limit < N:
            tables = build_divisor_tables(build_sieve(max(N, 2)))
        profile = regularity_profile(tables, alpha, height=N)
        pool = [int(v) for v in profile.regular_values()]
    if len(pool) ** k > budget:
        raise BudgetError(
            f"{len(pool)}^{k} tuple operations exceed budget {budget}; "
            f"reduce N or k")
    dist = {1: 1}
    for _ in range(k):
        nxt = Counter()
        for a, c in dist.items():
            for b in pool:
                nxt[a * b] += c
        dist = nxt
    return sum(c * c for c in dist.values())


def permutation_pair_count(N: int, k: int,
                           budget: int = DEFAULT_TUPLE_BUDGET) -> int:
    """Ordered pairs of k-tuples over [1, N] that are rearrangements of one
    another (the independent-coefficient analogue of the product count)."""
    if N < 1 or k < 1:
        raise DomainError(f"need N >= 1 and k >= 1, got N={N}, k={k}")
    if N**k > budget:
        raise BudgetError(
            f"{N}^{k} tuple operations exceed budget {budget}; reduce N or k")
    total = 0
    kfact = math.factorial(k)
    for multiset in combinations_with_replacement(range(1, N + 1), k):
        mult = Counter(multiset)
        orderings = kfact
        for m in mult.values():
            orderings //= math.factorial(m)
        total += orderings * orderings
    return total
