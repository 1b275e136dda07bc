# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels: schoolbook block matmul and scalar-block scaling.

Entries are uint64 values below a modulus p < 2**62; products are taken in
unsigned 128-bit and reduced once per accumulated output entry, which is the
hot inner loop of the whole protocol simulation.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport uint64_t

cdef extern from *:
    ctypedef unsigned long long uint128_t "unsigned __int128"

cnp.import_array()


def matmul_mod(a, b, uint64_t p):
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] av = np.ascontiguousarray(a, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] bv = np.ascontiguousarray(b, dtype=np.uint64)
    cdef Py_ssize_t n = av.shape[0], inner = av.shape[1], m = bv.shape[1]
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] out = np.zeros((n, m), dtype=np.uint64)
    cdef Py_ssize_t i, j, k
    cdef uint128_t acc
    for i in range(n):
        for j in range(m):
            acc = 0
            for k in range(inner):
                # per-term reduction keeps acc < inner * p, far below 2**128
                acc += (<uint128_t> av[i, k] * bv[k, j]) % p
            out[i, j] = <uint64_t> (acc % p)
    return out


def scale_mod(c, a, uint64_t p):
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] av = np.ascontiguousarray(a, dtype=np.uint64)
    cdef Py_ssize_t n = av.shape[0], m = av.shape[1]
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] out = np.zeros((n, m), dtype=np.uint64)
    cdef uint64_t cv = <uint64_t> (int(c) % p)
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(m):
            out[i, j] = <uint64_t> ((<uint128_t> cv * av[i, j]) % p)
    return out
