# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled triple-loop photon-loss kernel.

out[n, m] += k[j, n] * k[j, m] * rho[n+j, m+j], summed over j for every
entry; k is the precomputed Kraus coefficient table (entries in [0, 1]).
"""

import numpy as np

cimport numpy as cnp


def damp(const double complex[:, ::1] rho, const double[:, ::1] k,
         double complex[:, ::1] out):
    cdef Py_ssize_t dim = rho.shape[0]
    cdef Py_ssize_t j, n, m, top
    cdef double kjn
    for j in range(dim):
        top = dim - j
        for n in range(top):
            kjn = k[j, n]
            if kjn == 0.0:
                continue
            for m in range(top):
                out[n, m] = out[n, m] + kjn * k[j, m] * rho[n + j, m + j]
    return np.asarray(out)
