# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for truncated theta sums (same contract as _theta_py)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, exp, M_PI

cnp.import_array()


def theta_sum(v_in, tau_in, w_in):
    cdef cnp.ndarray[double, ndim=2] v = np.ascontiguousarray(v_in, dtype=np.float64)
    cdef cnp.ndarray[double complex, ndim=2] tau = np.ascontiguousarray(tau_in, dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=1] w = np.ascontiguousarray(w_in, dtype=np.complex128)
    cdef Py_ssize_t K = v.shape[0], g = v.shape[1]
    cdef Py_ssize_t k, a, b
    cdef double re, im, mag, qre, qim
    cdef double complex t
    cdef double complex val = 0
    cdef cnp.ndarray[double complex, ndim=1] grad = np.zeros(g, dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=2] hess = np.zeros((g, g), dtype=np.complex128)
    for k in range(K):
        qre = 0.0
        qim = 0.0
        for a in range(g):
            for b in range(g):
                qre += v[k, a] * tau[a, b].real * v[k, b]
                qim += v[k, a] * tau[a, b].imag * v[k, b]
            qre += 2.0 * v[k, a] * w[a].real
            qim += 2.0 * v[k, a] * w[a].imag
        # exp(pi i (qre + i qim))
        mag = exp(-M_PI * qim)
        re = mag * cos(M_PI * qre)
        im = mag * sin(M_PI * qre)
        t = re + 1j * im
        val += t
        for a in range(g):
            grad[a] += t * v[k, a]
            for b in range(a, g):
                hess[a, b] += t * v[k, a] * v[k, b]
    cdef double complex c1 = 2j * M_PI
    for a in range(g):
        grad[a] *= c1
        for b in range(a, g):
            hess[a, b] *= c1 * c1
            hess[b, a] = hess[a, b]
    return val, grad, hess
