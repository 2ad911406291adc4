# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernel.

Same contract as kernels.pure.score_sets: per point set, evaluate the
seven-term pair polynomial over precomputed pair features, keep the
largest len(vpow) values, and return their ascending weighted sum.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, pow
from libc.stdlib cimport free, malloc

cnp.import_array()


cdef inline double _pow1(double base, double exponent) nogil:
    if exponent == 1.0:
        return base
    return pow(base, exponent)


def score_sets(
    double[::1] dz not None,
    double[::1] dt not None,
    double[::1] dxy not None,
    long long[::1] ridx not None,
    long long[::1] cidx not None,
    long long[::1] pair_offsets not None,
    double[::1] g_abs not None,
    double[::1] p_abs not None,
    double[::1] alphas not None,
    double[::1] vpow not None,
):
    cdef Py_ssize_t n_sets = pair_offsets.shape[0] - 1
    cdef Py_ssize_t n_points = g_abs.shape[0]
    cdef Py_ssize_t omega = vpow.shape[0]

    out_arr = np.zeros(n_sets)
    cdef double[::1] out = out_arr
    if dz.shape[0] == 0 or n_sets == 0:
        return out_arr

    cdef double a1 = alphas[0], a2 = alphas[1], a3 = alphas[2], a4 = alphas[3]
    cdef double a5 = alphas[4], a6 = alphas[5], a7 = alphas[6], a8 = alphas[7]
    cdef double a9 = alphas[8], a10 = alphas[9]

    # per-point rate powers are shared by every pair touching the point
    gpow_arr = np.empty(n_points)
    ppow_arr = np.empty(n_points)
    cdef double[::1] gpow = gpow_arr
    cdef double[::1] ppow = ppow_arr

    cdef double* buf = <double*> malloc(omega * sizeof(double))
    if buf == NULL:
        raise MemoryError()

    cdef Py_ssize_t s, i, j, lo, hi, m, k, filled
    cdef double val, total

    try:
        with nogil:
            for i in range(n_points):
                gpow[i] = _pow1(g_abs[i], a8)
                ppow[i] = _pow1(p_abs[i], a10)

            for s in range(n_sets):
                lo = <Py_ssize_t> pair_offsets[s]
                hi = <Py_ssize_t> pair_offsets[s + 1]
                m = hi - lo
                if m == 0:
                    continue
                k = omega if omega < m else m
                filled = 0
                for i in range(lo, hi):
                    val = a1 * _pow1(dz[i], a2)
                    val -= a3 * _pow1(dt[i], a4)
                    val -= a5 * _pow1(dxy[i], a6)
                    val -= a7 * gpow[ridx[i]]
                    val -= a7 * gpow[cidx[i]]
                    val -= a9 * ppow[ridx[i]]
                    val -= a9 * ppow[cidx[i]]
                    if filled < k:
                        # ascending insertion into a not-yet-full buffer
                        j = filled
                        while j > 0 and buf[j - 1] > val:
                            buf[j] = buf[j - 1]
                            j -= 1
                        buf[j] = val
                        filled += 1
                    elif val > buf[0]:
                        # evict the smallest retained value
                        j = 1
                        while j < k and buf[j] < val:
                            buf[j - 1] = buf[j]
                            j += 1
                        buf[j - 1] = val
                total = 0.0
                for i in range(filled):
                    total += buf[i] * vpow[i]
                out[s] = total
    finally:
        free(buf)
    return out_arr
