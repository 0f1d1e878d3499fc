# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled convolution kernels over a precomputed multiplication plan.

A plan is three int64 arrays (I, J, K): every pair of materialized indices
whose sum stays inside the truncation, with K the position of the sum.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def conv_exact(object[:] a, object[:] b, const int64_t[:] I, const int64_t[:] J,
               const int64_t[:] K, Py_ssize_t n_out):
    cdef Py_ssize_t t, n = I.shape[0]
    cdef object x, y
    out = np.zeros(n_out, dtype=object)
    cdef object[:] o = out
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    # zero flags avoid Python-level multiplications by 0
    cdef cnp.uint8_t[:] za = np.fromiter((v != 0 for v in a), dtype=np.uint8, count=na)
    cdef cnp.uint8_t[:] zb = np.fromiter((v != 0 for v in b), dtype=np.uint8, count=nb)
    for t in range(n):
        if za[I[t]] and zb[J[t]]:
            x = a[I[t]]
            y = b[J[t]]
            o[K[t]] = o[K[t]] + x * y
    return out


def conv_int64(const int64_t[:] a, const int64_t[:] b, const int64_t[:] I,
               const int64_t[:] J, const int64_t[:] K, Py_ssize_t n_out):
    """Exact convolution when the caller has bounded every partial sum below 2**63."""
    cdef Py_ssize_t t, n = I.shape[0]
    out = np.zeros(n_out, dtype=np.int64)
    cdef int64_t[:] o = out
    cdef int64_t x
    for t in range(n):
        x = a[I[t]]
        if x:
            o[K[t]] += x * b[J[t]]
    return out


def conv_mod(const int64_t[:] a, const int64_t[:] b, const int64_t[:] I,
             const int64_t[:] J, const int64_t[:] K, Py_ssize_t n_out, int64_t modulus):
    cdef Py_ssize_t t, n = I.shape[0]
    out = np.zeros(n_out, dtype=np.int64)
    cdef int64_t[:] o = out
    cdef int64_t x
    for t in range(n):
        x = a[I[t]]
        if x:
            o[K[t]] = (o[K[t]] + x * b[J[t]]) % modulus
    return out


def scatter_exact(object[:] values, const int64_t[:] targets, Py_ssize_t n_out):
    cdef Py_ssize_t t, n = values.shape[0]
    out = np.zeros(n_out, dtype=object)
    cdef object[:] o = out
    for t in range(n):
        o[targets[t]] = o[targets[t]] + values[t]
    return out
