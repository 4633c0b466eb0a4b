# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels: Garsia values and direct kernel-image norms
evaluated over arrays of disk points.  Mirrors ``_sweeps_py``."""

import numpy as np


def garsia_values(const double complex[::1] modsq,
                  const double complex[:, ::1] gamma,
                  const double complex[::1] lams):
    cdef Py_ssize_t n = lams.shape[0]
    cdef Py_ssize_t m = gamma.shape[0]
    cdef Py_ssize_t d = gamma.shape[1]
    out_arr = np.zeros(n, dtype=np.float64)
    if m == 0 or n == 0:
        return out_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k, c
    cdef double complex lam, w, p, t
    cdef double ext, mag
    for i in range(n):
        lam = lams[i]
        w = lam.conjugate()
        p = 0
        for k in range(m - 1, 0, -1):
            p = (p + modsq[k]) * lam
        ext = modsq[0].real + 2.0 * p.real
        mag = 0.0
        for c in range(d):
            t = 0
            for k in range(m, 0, -1):
                t = gamma[k - 1, c] + w * t
            t = t * w
            mag += t.real * t.real + t.imag * t.imag
        out[i] = ext - mag
    return out_arr


def kernel_image_values(const double complex[:, ::1] gamma,
                        const double complex[::1] lams):
    cdef Py_ssize_t n = lams.shape[0]
    cdef Py_ssize_t m = gamma.shape[0]
    cdef Py_ssize_t d = gamma.shape[1]
    out_arr = np.zeros(n, dtype=np.float64)
    if m == 0 or n == 0:
        return out_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, c
    cdef double complex lam, w, t
    cdef double acc
    for i in range(n):
        lam = lams[i]
        w = lam.conjugate()
        acc = 0.0
        for c in range(d):
            t = 0
            for j in range(m, 0, -1):
                t = gamma[j - 1, c] + w * t
                acc += t.real * t.real + t.imag * t.imag
        out[i] = (1.0 - (lam.real * lam.real + lam.imag * lam.imag)) * acc
    return out_arr
