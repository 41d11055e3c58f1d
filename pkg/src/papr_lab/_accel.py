"""Backend selection for the hot kernels.

Set ``PAPR_LAB_NO_NUMBA=1`` to force the pure-numpy path. Without numba
installed the numpy path is used unconditionally.
"""
import os

try:
    from numba import njit as _njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("PAPR_LAB_NO_NUMBA", "").strip() not in ("1", "true", "yes")


def optional_njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity otherwise.

    The decorated function is always compiled if possible so both
    backends stay testable in one process; dispatch is decided by
    :data:`USE_NUMBA` in :mod:`papr_lab.kernels`.
    """
    def decorator(func):
        if HAVE_NUMBA:
            return _njit(*args, **kwargs)(func)
        return func
    return decorator


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
