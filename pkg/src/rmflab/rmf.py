"""Seeded sampling of Steinhaus sequences.

Every random draw is a pure function of (seed, stream, index) through a
SplitMix64-style counter hash, so replicates reproduce bit-for-bit no matter
how work is scheduled.  Phases are stored as unit complex numbers after
generation; prime powers are reached by repeated multiplication, never by
angle arithmetic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ContractError, DomainError
from .numbercore import FactorSieve, build_sieve

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB

# stream tags keep different samplers decorrelated under a shared seed
PHASE_STREAM = 0x5052494D45   # prime phases
INDEP_STREAM = 0x494E444550   # i.i.d. sequence


def mix64(x: int) -> int:
    """SplitMix64 finalizer on a 64-bit word (the documented seed hash)."""
    x &= _MASK64
    x = (x ^ (x >> 30)) * _MULT1 & _MASK64
    x = (x ^ (x >> 27)) * _MULT2 & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, index: int) -> int:
    """Per-replicate seed: mix64(mix64(master) + (index + 1) * GOLDEN)."""
    return mix64((mix64(master) + (index + 1) * _GOLDEN) & _MASK64)


def _counter_theta(seed: int, stream: int, count: int) -> np.ndarray:
    """Angles in [0, 2*pi), one per counter index, keyed by (seed, stream)."""
    key = mix64(mix64(seed) ^ stream)
    idx = np.arange(1, count + 1, dtype=np.uint64)
    x = np.uint64(key) + idx * np.uint64(_GOLDEN)   # wraps mod 2^64
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MULT1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MULT2)
    x ^= x >> np.uint64(31)
    u53 = (x >> np.uint64(11)).astype(np.float64)
    return u53 * (2.0 * np.pi / 9007199254740992.0)   # / 2^53


@dataclass
class PrimePhaseTable:
    """Unit-circle values at every prime <= limit, with seed provenance."""

    seed: int
    limit: int
    primes: np.ndarray   # ascending primes <= limit
    theta: np.ndarray    # angles in [0, 2*pi)
    values: np.ndarray   # exp(i * theta), complex128


@dataclass
class MultiplicativeSample:
    """Completely multiplicative extension X(1..N); values[n] indexed by n,
    values[0] unused."""

    seed: int
    limit: int
    values: np.ndarray


@dataclass
class IndependentSample:
    """i.i.d. unit-circle sequence r_1..r_N; values[n] indexed by n."""

    seed: int
    limit: int
    values: np.ndarray


def sample_phases(N: int, seed: int,
                  sieve: FactorSieve | None = None) -> PrimePhaseTable:
    """Draw one phase per prime <= N, keyed by (seed, prime index)."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if sieve is None:
        sieve = build_sieve(N)
    primes = sieve.primes[sieve.primes <= N]
    theta = _counter_theta(seed, PHASE_STREAM, len(primes))
    values = np.exp(1j * theta)
    return PrimePhaseTable(seed=seed, limit=N, primes=primes, theta=theta,
                           values=values)


def extend_multiplicatively(phases: PrimePhaseTable,
                            sieve: FactorSieve | None = None,
                            ) -> MultiplicativeSample:
    """X(n) for n <= N via the smallest-prime-factor recursion
    X(n) = X(spf(n)) * X(n / spf(n)); O(N) complex multiplications."""
    N = phases.limit
    if sieve is None:
        sieve = build_sieve(N)
    if sieve.limit < N:
        raise ContractError(
            f"sieve limit {sieve.limit} below sample limit {N}")
    values = np.zeros(N + 1, dtype=np.complex128)
    values[1] = 1.0
    values[phases.primes] = phases.values
    spf = np.ascontiguousarray(sieve.spf[:N + 1])
    _kernels.multiplicative_extend(spf, values)
    return MultiplicativeSample(seed=phases.seed, limit=N, values=values)


def sample_independent(N: int, seed: int) -> IndependentSample:
    """N independent unit-modulus values, deterministic per seed."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    theta = _counter_theta(seed, INDEP_STREAM, N)
    values = np.zeros(N + 1, dtype=np.complex128)
    values[1:] = np.exp(1j * theta)
    return IndependentSample(seed=seed, limit=N, values=values)


def write_sample_csv(sample, path) -> None:
    """Diagnostic export: (n, re, im) at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "re", "im"])
        for n in range(1, sample.limit + 1):
            v = sample.values[n]
            writer.writerow([n, f"{v.real:.17g}", f"{v.imag:.17g}"])
