"""Optional numba acceleration.

Set ``CAVSIM_DISABLE_JIT=1`` to force the pure-numpy kernels even when numba
is importable. The flag is read once, at import time.
"""
import os
import warnings

_disabled = os.environ.get("CAVSIM_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba ships in the test env
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

    if not _disabled:
        warnings.warn("numba not installed; falling back to numpy kernels")

USE_JIT = HAVE_NUMBA and not _disabled


def jit(func):
    """Compile ``func`` with ``njit(cache=True)`` when numba is available."""
    if not HAVE_NUMBA:
        return func
    return njit(cache=True)(func)
