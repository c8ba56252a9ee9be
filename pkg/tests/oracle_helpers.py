"""Independent oracles for the test suite.

Everything here is deliberately naive (trial division, recursive
enumeration, compensated summation) and shares no code path with the
package.
"""

import cmath
import math
from collections import Counter
from itertools import product


def trial_divisors(n):
    """All divisors of n by trial division, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def trial_factorize(n):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def big_omega_trial(n):
    return sum(e for _, e in trial_factorize(n))


def small_omega_trial(n):
    return len(trial_factorize(n))


def ordered_factorizations(n, k, cap=None, allowed=None):
    """Count ordered k-tuples with product n by plain recursion.

    cap bounds each factor; allowed, when given, is a predicate each factor
    must satisfy.  No memoization: this is the reference, not the fast path.
    """
    if k == 0:
        return 1 if n == 1 else 0
    total = 0
    for d in trial_divisors(n):
        if cap is not None and d > cap:
            continue
        if allowed is not None and not allowed(d):
            continue
        total += ordered_factorizations(n // d, k - 1, cap, allowed)
    return total


def segmented_prime_count(limit, segment=2**15):
    """Prime count by segmented Eratosthenes, independent of the package sieve."""
    if limit < 2:
        return 0
    root = math.isqrt(limit)
    base = bytearray([1]) * (root + 1)
    base[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p::p] = b"\x00" * len(base[p * p::p])
    base_primes = [p for p in range(2, root + 1) if base[p]]
    count = len([p for p in base_primes if p <= limit])
    lo = root + 1
    while lo <= limit:
        hi = min(lo + segment - 1, limit)
        seg = bytearray([1]) * (hi - lo + 1)
        for p in base_primes:
            start = max(p * p, ((lo + p - 1) // p) * p)
            for m in range(start, hi + 1, p):
                seg[m - lo] = 0
        count += sum(seg)
        lo = hi + 1
    return count


def compensated_eval(coeffs, norm, t):
    """Reference polynomial evaluation with fsum-compensated accumulation."""
    re_parts, im_parts = [], []
    for n in range(1, len(coeffs)):
        term = coeffs[n] * cmath.exp(1j * t * math.log(n))
        re_parts.append(term.real)
        im_parts.append(term.imag)
    return norm * complex(math.fsum(re_parts), math.fsum(im_parts))


def product_pair_count(N, k, pool=None):
    """Ordered pairs of k-tuples with equal products, plain enumeration."""
    pool = pool if pool is not None else range(1, N + 1)
    counts = Counter()
    for tup in product(pool, repeat=k):
        counts[math.prod(tup)] += 1
    return sum(c * c for c in counts.values())


def permutation_pair_count_brute(N, k):
    """Ordered pairs of k-tuples that are rearrangements, plain enumeration."""
    counts = Counter()
    for tup in product(range(1, N + 1), repeat=k):
        counts[tuple(sorted(tup))] += 1
    return sum(c * c for c in counts.values())


def entropy(x):
    """Binary-entropy-style helper used by the log-binomial bound."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)
