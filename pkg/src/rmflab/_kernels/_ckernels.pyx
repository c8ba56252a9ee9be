# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: rotator grid evaluation, completely multiplicative
table fill, and Dirichlet convolution with the all-ones function."""

import numpy as np

BACKEND = "cython"


def grid_eval(coeffs_in, start_in, rotors_in, Py_ssize_t count,
              Py_ssize_t renorm_every=1024):
    """Sum coeffs[i] * start[i] * rotors[i]**j for j = 0..count-1.

    start/rotors are unit-modulus; the rotator states are renormalized to
    unit modulus every `renorm_every` steps so phase drift stays at the
    random-walk-of-ulps level.  No transcendental calls in the loop.
    """
    cdef double complex[::1] coeffs = np.ascontiguousarray(coeffs_in, dtype=np.complex128)
    cdef double complex[::1] rotors = np.ascontiguousarray(rotors_in, dtype=np.complex128)
    state = np.array(start_in, dtype=np.complex128)
    cdef double complex[::1] z = state
    cdef Py_ssize_t n = coeffs.shape[0]
    if rotors.shape[0] != n or z.shape[0] != n:
        raise ValueError("coeffs, start and rotors must have equal length")
    out_arr = np.empty(count, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double complex acc
    cdef double mag
    for j in range(count):
        acc = 0
        for i in range(n):
            acc = acc + coeffs[i] * z[i]
        out[j] = acc
        for i in range(n):
            z[i] = z[i] * rotors[i]
        if renorm_every > 0 and (j + 1) % renorm_every == 0:
            for i in range(n):
                mag = abs(z[i])
                if mag > 0:
                    z[i] = z[i] / mag
    return out_arr


def multiplicative_extend(spf_in, values):
    """Fill values[n] = values[spf[n]] * values[n // spf[n]] for composite n.

    values must be complex128, contiguous, prefilled at indices 1 and all
    primes; entries are completed in increasing n (each factor is smaller
    than n, so dependencies are already resolved).
    """
    cdef int[::1] spf = np.ascontiguousarray(spf_in, dtype=np.int32)
    if not isinstance(values, np.ndarray) or values.dtype != np.complex128:
        raise ValueError("values must be a complex128 ndarray")
    cdef double complex[::1] vals = values
    if vals.shape[0] != spf.shape[0]:
        raise ValueError("values and spf must have equal length")
    cdef Py_ssize_t n, p
    for n in range(2, spf.shape[0]):
        p = spf[n]
        if p != n:
            vals[n] = vals[p] * vals[n // p]
    return values


def convolve_with_ones(f_in):
    """Return g with g[n] = sum over divisors d of n of f[d], 1 <= n <= M.

    Index 0 is ignored.  Exact int64; the caller is responsible for the
    no-overflow pre-check.
    """
    cdef long long[::1] f = np.ascontiguousarray(f_in, dtype=np.int64)
    cdef Py_ssize_t m = f.shape[0] - 1
    out_arr = np.zeros(m + 1, dtype=np.int64)
    cdef long long[::1] g = out_arr
    cdef Py_ssize_t d, j
    cdef long long fd
    for d in range(1, m + 1):
        fd = f[d]
        if fd != 0:
            for j in range(d, m + 1, d):
                g[j] += fd
    return out_arr
