"""Pure numpy implementations of the convolution kernels.

Used when the compiled ``_kernels`` extension is unavailable.  Every
function has the same signature and semantics as its Cython twin.
"""
from __future__ import annotations

import numpy as np


def conv_exact(a, b, I, J, K, n_out):
    """out[K[t]] += a[I[t]] * b[J[t]] over Python integers (object arrays)."""
    out = np.zeros(n_out, dtype=object)
    if len(I) == 0:
        return out
    prod = a[I] * b[J]
    np.add.at(out, K, prod)
    return out


def conv_int64(a, b, I, J, K, n_out):
    """Exact int64 convolution; the caller guarantees no overflow."""
    out = np.zeros(n_out, dtype=np.int64)
    if len(I) == 0:
        return out
    np.add.at(out, K, a[I] * b[J])
    return out


def conv_mod(a, b, I, J, K, n_out, modulus):
    """Same convolution on int64 residues modulo ``modulus`` (< 2**31)."""
    out = np.zeros(n_out, dtype=np.int64)
    if len(I) == 0:
        return out
    prod = (a[I] * b[J]) % modulus
    np.add.at(out, K, prod)
    return out % modulus


def scatter_exact(values, targets, n_out):
    out = np.zeros(n_out, dtype=object)
    np.add.at(out, targets, values)
    return out
