"""Backend switch for the numeric kernels.

Kernels are written once in numba-compatible Python. When numba is importable
and ``TREEMINOR_NUMBA`` is not set to ``0``/``false``/``off``, they are compiled
with ``numba.njit``; otherwise the same source runs as plain Python over numpy
arrays.
"""

import os

_FALSE = {"0", "false", "off", "no"}

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("TREEMINOR_NUMBA", "1").strip().lower() not in _FALSE


def njit(func):
    """Compile ``func`` with numba when enabled, else return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def backend_name() -> str:
    return "numba" if USE_NUMBA else "python"


def env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)
