"""Kernel backend selection.

The compiled extension is preferred; set ``HERMQ2_PURE_PYTHON=1`` to force
the numpy fallback (the test-suite runs both).
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("HERMQ2_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py


def use_backend(name: str) -> None:
    """Switch backend at runtime ("cython" or "python")."""
    global _impl, BACKEND
    if name == "python":
        _impl, BACKEND = _kernels_py, "python"
    elif name == "cython":
        from . import _kernels

        _impl, BACKEND = _kernels, "cython"
    else:
        raise ValueError(f"unknown backend {name!r}")


_INT64_SAFE = 2**62


def _max_abs(v) -> int:
    return max((abs(int(x)) for x in v), default=0)


def conv_exact(a, b, I, J, K, n_out):
    """Exact convolution of object arrays; uses int64 when no partial sum can overflow."""
    ma, mb = _max_abs(a), _max_abs(b)
    if ma and mb and len(K) and ma * mb * int(np.bincount(K).max()) < _INT64_SAFE:
        r = _impl.conv_int64(a.astype(np.int64), b.astype(np.int64), I, J, K, n_out)
        return r.astype(object)
    return _impl.conv_exact(a, b, I, J, K, n_out)


def conv_mod(a, b, I, J, K, n_out, modulus):
    return _impl.conv_mod(a, b, I, J, K, n_out, modulus)


def scatter_exact(values, targets, n_out):
    return _impl.scatter_exact(values, targets, n_out)
