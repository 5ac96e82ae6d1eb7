# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_fallback.py``."""

import numpy as np

cdef extern from "<complex.h>" nogil:
    double complex cexp(double complex)
    double complex csinh(double complex)
    double cabs(double complex)
    double creal(double complex)

from libc.math cimport log, M_PI

cdef double SERIES_RADIUS = 1.0
cdef double LARGE_RE = 20.0

cdef double[11] SINH_COEF
cdef double[24] EXP_COEF


def _init_tables():
    from math import factorial
    cdef int i
    for i in range(11):
        SINH_COEF[i] = 1.0 / factorial(2 * (i + 1) + 1)
    for i in range(24):
        EXP_COEF[i] = (-1) ** (i + 2) * (i + 1) / factorial(i + 2)


_init_tables()


cdef inline double complex _defect(double complex y) nogil:
    cdef double complex acc, w, em, ratio
    cdef int i
    if cabs(y) < SERIES_RADIUS:
        w = y * y
        acc = 0
        for i in range(10, -1, -1):
            acc = acc * w + SINH_COEF[i]
        # y/sinh y from its own series: no complex division of tiny numbers
        ratio = 1.0 / (1.0 + w * acc)
        acc = acc * ratio
        w = 0
        for i in range(23, -1, -1):
            w = w * y + EXP_COEF[i]
        return acc - w
    em = cexp(-y)
    if creal(y) > LARGE_RE:
        ratio = 2.0 * y * em / (1.0 - em * em)
    else:
        ratio = y / csinh(y)
    return ((1.0 + y) * em - ratio) / (y * y)


def defect(y):
    cdef const double complex[::1] yv = np.ascontiguousarray(y, dtype=complex).ravel()
    out = np.empty(yv.shape[0], dtype=complex)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(yv.shape[0]):
            ov[i] = _defect(yv[i])
    return out.reshape(np.shape(y))


def f3_integrand(r, double complex s, double phase):
    cdef const double[::1] rv = np.ascontiguousarray(r, dtype=float).ravel()
    out = np.empty(rv.shape[0], dtype=complex)
    cdef double complex[::1] ov = out
    cdef double complex rot = cexp(1j * phase)
    cdef double complex w = 1.0 - s
    cdef Py_ssize_t i
    with nogil:
        for i in range(rv.shape[0]):
            ov[i] = rot * cexp(w * (log(rv[i]) + 1j * phase)) * _defect(rv[i] * rot)
    return out.reshape(np.shape(r))


def f2_integrand(rho, double complex s, double phase):
    cdef const double[::1] rv = np.ascontiguousarray(rho, dtype=float).ravel()
    out = np.empty(rv.shape[0], dtype=complex)
    cdef double complex[::1] ov = out
    cdef double complex half = cexp(0.5j * phase)
    cdef double complex w = 1.0 - s
    cdef double complex x, y
    cdef double logpi = log(M_PI)
    cdef Py_ssize_t i
    with nogil:
        for i in range(rv.shape[0]):
            x = rv[i] * half
            y = M_PI * x * x
            # x y^(1-s) as one power so tiny rho cannot overflow rho^(2w) on its own
            ov[i] = (half * half * 2.0 * M_PI
                     * cexp(w * (logpi + 1j * phase) + (2.0 * w + 1.0) * log(rv[i]))
                     * _defect(y))
    return out.reshape(np.shape(rho))


def alt_weighted_sum(double complex s, weights, Py_ssize_t start=0):
    cdef const double[::1] wv = np.ascontiguousarray(weights, dtype=float)
    cdef double complex total = 0, term
    cdef Py_ssize_t k
    with nogil:
        for k in range(wv.shape[0] - 1, start - 1, -1):
            term = wv[k] * cexp(-s * log(<double>(k + 1)))
            if k & 1:
                total = total - term
            else:
                total = total + term
    return complex(total)
