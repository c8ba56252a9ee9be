#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Covers the two hot loops: rotator grid evaluation (dominates supremum scans
and moment quadrature) and the completely multiplicative table fill.

Usage: python3 benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from rmflab._kernels import _pykernels

try:
    from rmflab._kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_grid(backend, n, count):
    rng = np.random.default_rng(1)
    coeffs = np.exp(2j * np.pi * rng.random(n))
    logn = np.log(np.arange(1, n + 1))
    start = np.exp(1j * (-50.0) * logn)
    rotors = np.exp(1j * 1e-3 * logn)
    return best_of(lambda: backend.grid_eval(coeffs, start, rotors, count))


def bench_extend(backend, limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == 0:
            sl = spf[p * p::p]
            sl[sl == 0] = p
    untouched = spf == 0
    spf[untouched] = np.arange(limit + 1, dtype=np.int32)[untouched]
    spf[0], spf[1] = 0, 1
    primes = np.flatnonzero(spf[2:] == np.arange(2, limit + 1)) + 2
    rng = np.random.default_rng(2)
    phases = np.exp(2j * np.pi * rng.random(len(primes)))

    def run():
        values = np.zeros(limit + 1, dtype=np.complex128)
        values[1] = 1.0
        values[primes] = phases
        backend.multiplicative_extend(spf, values)

    return best_of(run)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller sizes, single repeat")
    args = parser.parse_args()

    grid_cases = [(64, 100_000), (256, 100_000), (1024, 50_000)]
    extend_cases = [100_000, 1_000_000]
    if args.quick:
        grid_cases = [(64, 20_000), (256, 10_000)]
        extend_cases = [100_000]

    backends = [("numpy", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled extension not available; timing fallback only")

    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for n, count in grid_cases:
        times = [bench_grid(impl, n, count) for _, impl in backends]
        row = f"grid_eval N={n:<5} J={count:<8}"
        row += "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)
    for limit in extend_cases:
        times = [bench_extend(impl, limit) for _, impl in backends]
        row = f"mult_extend N={limit:<12}"
        row += "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
