# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernel: per-segment Omega(n) with multiplicity.

Contract matches pntkit._kernel._omega_np.omega_segment exactly; both are
exercised against the same oracles so either backend may serve.
"""

import numpy as np

cimport numpy as cnp


def omega_segment(long long lo, long long hi, cnp.int64_t[::1] primes):
    cdef Py_ssize_t n = <Py_ssize_t> (hi - lo)
    omega_arr = np.zeros(n, dtype=np.uint8)
    rem_arr = np.arange(lo, hi, dtype=np.int64)
    cdef cnp.uint8_t[::1] omega = omega_arr
    cdef cnp.int64_t[::1] rem = rem_arr
    cdef long long p, q, start, m, top
    cdef Py_ssize_t j, i
    top = hi - 1
    with nogil:
        for j in range(primes.shape[0]):
            p = primes[j]
            q = p
            while True:
                start = ((lo + q - 1) // q) * q
                m = start
                while m < hi:
                    i = <Py_ssize_t> (m - lo)
                    omega[i] += 1
                    rem[i] = rem[i] // p
                    m += q
                if q > top // p:
                    break
                q *= p
        for i in range(n):
            if rem[i] > 1:
                omega[i] += 1
    return omega_arr
