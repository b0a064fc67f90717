"""Backend selection for the compiled kernels.

The compiled extension is preferred when present; `TDAKIT_BACKEND=python`
(or `=c`) forces a choice at import time, and every entry point also accepts
an explicit `backend=` override so tests and benchmarks can compare the two.
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels
except ImportError:  # extension not built
    _kernels = None

_IMPLS = {"python": _kernels_py}
if _kernels is not None:
    _IMPLS["c"] = _kernels


def _default_backend() -> str:
    forced = os.environ.get("TDAKIT_BACKEND")
    if forced:
        if forced not in ("c", "python"):
            raise ValueError(f"TDAKIT_BACKEND must be 'c' or 'python', got {forced!r}")
        if forced == "c" and _kernels is None:
            raise ImportError("TDAKIT_BACKEND=c but the compiled extension is not available")
        return forced
    return "c" if _kernels is not None else "python"


DEFAULT_BACKEND = _default_backend()


def available_backends() -> tuple:
    return tuple(sorted(_IMPLS))


def _impl(backend):
    name = backend or DEFAULT_BACKEND
    try:
        return _IMPLS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")


def reduce_lows(dims, col_ptr, col_rows, backend=None):
    return _impl(backend).reduce_lows(dims, col_ptr, col_rows)


def max_matching_under(cost, thresh, backend=None):
    return _impl(backend).max_matching_under(cost, thresh)
