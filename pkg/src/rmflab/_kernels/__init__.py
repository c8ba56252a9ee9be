"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the numpy
fallback is always available.  Set RMFLAB_BACKEND=python or =cython to force
one (forcing cython raises if the extension is missing).
"""

import os

_requested = os.environ.get("RMFLAB_BACKEND", "").strip().lower()

if _requested in ("python", "numpy"):
    from . import _pykernels as _impl
elif _requested == "cython":
    from . import _ckernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
grid_eval = _impl.grid_eval
multiplicative_extend = _impl.multiplicative_extend
convolve_with_ones = _impl.convolve_with_ones
