# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled hot kernels: full-range polynomial evaluation histograms.

Contracts match _kernels_py. The modulus must fit in 31 bits so the Horner
step acc*a + c stays below 2^63 in unsigned 64-bit arithmetic.
"""

import numpy as np


def hist_eval(coeffs, long long m):
    """counts[v] = #{a in [0, m) : poly(a) = v mod m}; coeffs reduced in [0, m)."""
    if m >= (<long long> 1) << 31:
        raise ValueError(f"modulus must be < 2^31, got {m}")
    cdef Py_ssize_t d = len(coeffs)
    counts_arr = np.zeros(m, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    if d == 0:
        counts[0] = m
        return counts_arr
    cs_arr = np.ascontiguousarray(np.asarray(coeffs, dtype=np.uint64))
    cdef const unsigned long long[::1] cs = cs_arr
    cdef unsigned long long a, acc, um = <unsigned long long> m
    cdef Py_ssize_t i
    with nogil:
        for a in range(um):
            acc = cs[d - 1]
            for i in range(d - 2, -1, -1):
                acc = (acc * a + cs[i]) % um
            counts[<Py_ssize_t> acc] += 1
    return counts_arr


def roots_scan(coeffs, long long m):
    """All a in [0, m) with poly(a) = 0 mod m, ascending."""
    if m >= (<long long> 1) << 31:
        raise ValueError(f"modulus must be < 2^31, got {m}")
    cdef Py_ssize_t d = len(coeffs)
    if d == 0:
        return np.arange(m, dtype=np.int64)
    cs_arr = np.ascontiguousarray(np.asarray(coeffs, dtype=np.uint64))
    cdef const unsigned long long[::1] cs = cs_arr
    out = []
    cdef unsigned long long a, acc, um = <unsigned long long> m
    cdef Py_ssize_t i
    for a in range(um):
        acc = cs[d - 1]
        for i in range(d - 2, -1, -1):
            acc = (acc * a + cs[i]) % um
        if acc == 0:
            out.append(a)
    return np.asarray(out, dtype=np.int64)
