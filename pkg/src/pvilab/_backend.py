"""Kernel backend selection.

The hot numeric kernels in ``_kernels`` are written as plain scalar Python
and compiled with numba's ``@njit`` by default.  Setting the environment
variable ``PVI_LAB_BACKEND=numpy`` (read once at import time) skips the JIT
and runs the identical code paths in the interpreter; results are the same,
only slower.  ``bench/bench_backends.py`` compares the two.
"""

import os

_requested = os.environ.get("PVI_LAB_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    _requested = "numba"

JIT_ENABLED = _requested == "numba"

if JIT_ENABLED:
    try:
        from numba import njit as _numba_njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False

if JIT_ENABLED:

    def njit(func):
        return _numba_njit(cache=True)(func)

else:

    def njit(func):
        return func


def backend_name() -> str:
    return "numba" if JIT_ENABLED else "numpy"
