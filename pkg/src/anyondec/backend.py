"""Kernel backend selection.

Two interchangeable backends provide the hot numerical kernels: a
numba-compiled one (default when numba imports cleanly) and a pure-numpy
one.  The environment variable ``ANYONDEC_BACKEND`` selects explicitly:

    ANYONDEC_BACKEND=numpy   force the pure-numpy path
    ANYONDEC_BACKEND=numba   force the compiled path

The variable is consulted on every call, so tests can switch backends by
patching the environment.  ``benchmarks/bench_backends.py`` compares the
two.
"""
from __future__ import annotations

import os
import warnings

_ENV_VAR = "ANYONDEC_BACKEND"
_cache: dict[str, object] = {}
_numba_failed = False


def _load(name: str):
    if name in _cache:
        return _cache[name]
    if name == "numpy":
        from . import _kernels_numpy as mod
    elif name == "numba":
        from . import _kernels_numba as mod
    else:
        raise ValueError(
            f"unknown kernel backend {name!r}; expected 'numba' or 'numpy'"
        )
    _cache[name] = mod
    return mod


def get_kernels(name: str | None = None):
    """Return the kernel module for `name` or for the environment default."""
    global _numba_failed
    requested = name or os.environ.get(_ENV_VAR, "").strip().lower()
    if requested:
        return _load(requested)
    if not _numba_failed:
        try:
            return _load("numba")
        except ImportError:
            _numba_failed = True
            warnings.warn(
                "numba is unavailable; falling back to the pure-numpy kernels",
                RuntimeWarning,
                stacklevel=2,
            )
    return _load("numpy")


def available_backends() -> tuple[str, ...]:
    """Names of the backends importable in this environment."""
    names = []
    for name in ("numba", "numpy"):
        try:
            _load(name)
        except ImportError:
            continue
        names.append(name)
    return tuple(names)
