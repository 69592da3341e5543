# cython: language_level=3
"""Compiled convolution kernels.

Semantics match _kernels_py exactly; see that module for the contracts.
The O(N^2) triangular sums run as straight C loops here, which is what
makes whole-grid operator applications and long-horizon marching cheap.
"""

import numpy as np


def conv_lower(const double[::1] b, const double[::1] g, double scale):
    cdef Py_ssize_t n = g.shape[0]
    out_arr = np.zeros(n + 1)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(1, n + 1):
        acc = 0.0
        for j in range(i):
            acc += b[i - j] * g[j]
        out[i] = scale * acc
    return out_arr


def trap_apply(const double[::1] a, const double[::1] c, const double[::1] f, double scale):
    cdef Py_ssize_t n = f.shape[0] - 1
    out_arr = np.zeros(n + 1)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(1, n + 1):
        acc = c[i] * f[0] + f[i]
        for j in range(1, i):
            acc += a[i - j] * f[j]
        out[i] = scale * acc
    return out_arr


def pc_sums(const double[::1] bx, const double[::1] ax, const double[::1] bv, const double[::1] av,
            const double[::1] fhist, Py_ssize_t n, Py_ssize_t j0):
    cdef double px = 0.0, cx = 0.0, pv = 0.0, cv = 0.0
    cdef Py_ssize_t j
    cdef double fj
    cdef bint has_v = bv.shape[0] > 0
    for j in range(j0, n):
        px += bx[n - j] * fhist[j]
    for j in range(1, n):
        cx += ax[n - j] * fhist[j]
    if has_v:
        for j in range(j0, n):
            pv += bv[n - j] * fhist[j]
        for j in range(1, n):
            cv += av[n - j] * fhist[j]
    return px, cx, pv, cv
