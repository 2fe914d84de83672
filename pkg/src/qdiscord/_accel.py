"""Optional numba acceleration.

Set ``QDISCORD_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable. The flag is read once, at import time.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None

_FALSY = {"", "0", "false", "no", "off"}
DISABLED_BY_ENV = os.environ.get("QDISCORD_DISABLE_NUMBA", "").strip().lower() not in _FALSY

USE_NUMBA = NUMBA_AVAILABLE and not DISABLED_BY_ENV


def jit(*args, **kwargs):
    """``numba.njit`` when acceleration is on, otherwise a no-op decorator."""
    if not USE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda func: func
    return numba.njit(*args, **kwargs)
