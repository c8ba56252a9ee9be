"""Both kernel backends against direct oracles and against each other."""

import numpy as np
import pytest

from rmflab._kernels import _pykernels

try:
    from rmflab._kernels import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [_pykernels] if _ckernels is None else [_ckernels, _pykernels]
IDS = ["numpy"] if _ckernels is None else ["cython", "numpy"]


def _setup(n, t0, step, seed=0):
    rng = np.random.default_rng(seed)
    coeffs = np.exp(2j * np.pi * rng.random(n))
    logn = np.log(np.arange(1, n + 1))
    start = np.exp(1j * t0 * logn)
    rotors = np.exp(1j * step * logn)
    return coeffs, logn, start, rotors


def _direct(coeffs, logn, t):
    return (coeffs * np.exp(1j * t * logn)).sum()


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_grid_eval_matches_direct(backend):
    n, t0, step, count = 48, -3.0, 0.017, 2000
    coeffs, logn, start, rotors = _setup(n, t0, step)
    out = backend.grid_eval(coeffs, start, rotors, count)
    scale = np.abs(coeffs).sum()
    for j in (0, 1, 7, 512, 1023, 1024, 1999):
        expect = _direct(coeffs, logn, t0 + j * step)
        assert abs(out[j] - expect) < 1e-10 * scale


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_grid_eval_zero_step_constant(backend):
    coeffs, logn, start, rotors = _setup(16, 1.3, 0.0)
    out = backend.grid_eval(coeffs, start, rotors, 50)
    assert np.allclose(out, out[0], rtol=0, atol=1e-14)


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_grid_eval_long_run_drift(backend):
    # 10^5 rotation steps: renormalization keeps phase drift ~ ulp level
    n, t0, step, count = 16, 0.0, 1e-3, 100_000
    coeffs, logn, start, rotors = _setup(n, t0, step, seed=3)
    out = backend.grid_eval(coeffs, start, rotors, count)
    scale = np.abs(coeffs).sum()
    for j in (count - 1, count // 2, 99_328):
        expect = _direct(coeffs, logn, t0 + j * step)
        assert abs(out[j] - expect) < 1e-10 * scale


def test_backends_agree():
    if _ckernels is None:
        pytest.skip("compiled backend not built")
    coeffs, _, start, rotors = _setup(32, -1.0, 0.01, seed=5)
    a = _ckernels.grid_eval(coeffs, start, rotors, 5000)
    b = _pykernels.grid_eval(coeffs, start, rotors, 5000)
    assert np.max(np.abs(a - b)) < 1e-11 * np.abs(coeffs).sum()


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_multiplicative_extend(backend):
    from rmflab.numbercore import build_sieve

    limit = 5000
    sieve = build_sieve(limit)
    rng = np.random.default_rng(11)
    phases = np.exp(2j * np.pi * rng.random(len(sieve.primes)))
    values = np.zeros(limit + 1, dtype=np.complex128)
    values[1] = 1.0
    values[sieve.primes] = phases
    backend.multiplicative_extend(np.ascontiguousarray(sieve.spf), values)
    by_prime = {int(p): phases[i] for i, p in enumerate(sieve.primes)}
    for n in (4, 12, 30, 64, 97, 1024, 2310, 4999):
        expect = 1.0 + 0.0j
        m = n
        while m > 1:
            p = int(sieve.spf[m])
            expect *= by_prime[p]
            m //= p
        assert abs(values[n] - expect) < 1e-12


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_convolve_with_ones(backend):
    f = np.zeros(31, dtype=np.int64)
    f[1:] = np.arange(1, 31)
    g = backend.convolve_with_ones(f)
    for n in range(1, 31):
        assert g[n] == sum(d for d in range(1, n + 1) if n % d == 0)
