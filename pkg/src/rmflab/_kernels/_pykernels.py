"""Pure-numpy fallback for the compiled kernels.

Same contracts as _ckernels; each routine meets the eval_at agreement
tolerance on its own (results are not required to be bit-identical to the
compiled path).
"""

import numpy as np

BACKEND = "numpy"

_MAX_BLOCK = 8192


def grid_eval(coeffs_in, start_in, rotors_in, count, renorm_every=1024):
    """Blocked rotator evaluation: cumprod of rotors per block, then a
    matrix-vector product against the coefficients.

    Renormalization happens at block boundaries; the block never exceeds
    renorm_every, so states are renormalized at least as often as asked.
    """
    coeffs = np.ascontiguousarray(coeffs_in, dtype=np.complex128)
    rotors = np.ascontiguousarray(rotors_in, dtype=np.complex128)
    z = np.array(start_in, dtype=np.complex128)
    n = coeffs.shape[0]
    if rotors.shape[0] != n or z.shape[0] != n:
        raise ValueError("coeffs, start and rotors must have equal length")
    out = np.empty(count, dtype=np.complex128)
    block = int(renorm_every) if 0 < renorm_every <= _MAX_BLOCK else _MAX_BLOCK
    scratch = np.empty((min(block, max(count, 1)), n), dtype=np.complex128)
    pos = 0
    while pos < count:
        b = min(block, count - pos)
        panel = scratch[:b]
        panel[0] = z
        if b > 1:
            panel[1:] = rotors
            np.cumprod(panel, axis=0, out=panel)
        out[pos:pos + b] = panel @ coeffs
        z = panel[b - 1] * rotors
        if renorm_every > 0:
            mag = np.abs(z)
            np.divide(z, np.where(mag > 0, mag, 1.0), out=z)
        pos += b
    return out


def multiplicative_extend(spf_in, values):
    """Fill values at composite indices, level by level in Omega(n)."""
    spf = np.ascontiguousarray(spf_in, dtype=np.int32)
    if not isinstance(values, np.ndarray) or values.dtype != np.complex128:
        raise ValueError("values must be a complex128 ndarray")
    if values.shape[0] != spf.shape[0]:
        raise ValueError("values and spf must have equal length")
    limit = spf.shape[0] - 1
    if limit < 4:
        return values
    idx = np.arange(limit + 1, dtype=np.int64)
    primes = idx[2:][spf[2:] == idx[2:]]
    omega = np.zeros(limit + 1, dtype=np.int16)
    for p in primes.tolist():
        q = p
        while q <= limit:
            omega[q::q] += 1
            q *= p
    spf64 = spf.astype(np.int64)
    # composites with Omega = level depend only on entries with smaller Omega
    for level in range(2, int(omega.max()) + 1):
        ns = np.flatnonzero(omega == level)
        p = spf64[ns]
        values[ns] = values[p] * values[ns // p]
    return values


def convolve_with_ones(f_in):
    """g[n] = sum over divisors d of n of f[d]; strided slice accumulation."""
    f = np.asarray(f_in)
    m = f.shape[0] - 1
    g = np.zeros_like(f)
    for d in range(1, m + 1):
        v = f[d]
        if v:
            g[d::d] += v
    return g
