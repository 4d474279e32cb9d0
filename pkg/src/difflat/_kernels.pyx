# cython: boundscheck=False, wraparound=False, cdivision=True
# Compiled hot kernels: batched exponential sums over comb points and
# shifted-overlap pair sums on dense weight boxes.  Real/imag parts travel
# as separate double arrays so every loop stays nogil; _backend owns the
# complex packing and the dtype checks.

import numpy as np

cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport cos, floor, sin

cnp.import_array()

DEF TWO_PI = 6.283185307179586476925286766559


def exp_sums_f64(cnp.int64_t[:, ::1] coords, double[::1] wr, double[::1] wi,
                 double[:, ::1] kappas, double[:, ::1] out2):
    cdef Py_ssize_t M = coords.shape[0]
    cdef Py_ssize_t n = coords.shape[1]
    cdef Py_ssize_t K = kappas.shape[0]
    cdef Py_ssize_t i, j, d
    cdef double ph, th, c, s, ar, ai
    for i in prange(K, nogil=True, schedule="static"):
        ar = 0.0
        ai = 0.0
        for j in range(M):
            ph = 0.0
            for d in range(n):
                ph = ph + kappas[i, d] * <double> coords[j, d]
            ph = ph - floor(ph + 0.5)
            th = -TWO_PI * ph
            c = cos(th)
            s = sin(th)
            ar = ar + wr[j] * c - wi[j] * s
            ai = ai + wr[j] * s + wi[j] * c
        out2[i, 0] = ar
        out2[i, 1] = ai


def pair_sums_1d(double[::1] xr, double[::1] xi, double[::1] yr, double[::1] yi,
                 cnp.int64_t[:, ::1] shifts, double[:, ::1] out2):
    cdef Py_ssize_t n0 = xr.shape[0]
    cdef Py_ssize_t Z = shifts.shape[0]
    cdef Py_ssize_t k, p
    cdef Py_ssize_t z0, a0, b0
    cdef double ar, ai
    for k in prange(Z, nogil=True, schedule="static"):
        z0 = shifts[k, 0]
        a0 = z0 if z0 > 0 else 0
        b0 = n0 + z0 if z0 < 0 else n0
        ar = 0.0
        ai = 0.0
        for p in range(a0, b0):
            # x * conj(y)
            ar = ar + xr[p] * yr[p - z0] + xi[p] * yi[p - z0]
            ai = ai + xi[p] * yr[p - z0] - xr[p] * yi[p - z0]
        out2[k, 0] = ar
        out2[k, 1] = ai


def pair_sums_2d(double[:, ::1] xr, double[:, ::1] xi, double[:, ::1] yr, double[:, ::1] yi,
                 cnp.int64_t[:, ::1] shifts, double[:, ::1] out2):
    cdef Py_ssize_t n0 = xr.shape[0]
    cdef Py_ssize_t n1 = xr.shape[1]
    cdef Py_ssize_t Z = shifts.shape[0]
    cdef Py_ssize_t k, p, q
    cdef Py_ssize_t z0, z1, a0, b0, a1, b1
    cdef double ar, ai
    for k in prange(Z, nogil=True, schedule="static"):
        z0 = shifts[k, 0]
        z1 = shifts[k, 1]
        a0 = z0 if z0 > 0 else 0
        b0 = n0 + z0 if z0 < 0 else n0
        a1 = z1 if z1 > 0 else 0
        b1 = n1 + z1 if z1 < 0 else n1
        ar = 0.0
        ai = 0.0
        for p in range(a0, b0):
            for q in range(a1, b1):
                ar = ar + xr[p, q] * yr[p - z0, q - z1] + xi[p, q] * yi[p - z0, q - z1]
                ai = ai + xi[p, q] * yr[p - z0, q - z1] - xr[p, q] * yi[p - z0, q - z1]
        out2[k, 0] = ar
        out2[k, 1] = ai


def pair_sums_3d(double[:, :, ::1] xr, double[:, :, ::1] xi, double[:, :, ::1] yr,
                 double[:, :, ::1] yi, cnp.int64_t[:, ::1] shifts, double[:, ::1] out2):
    cdef Py_ssize_t n0 = xr.shape[0]
    cdef Py_ssize_t n1 = xr.shape[1]
    cdef Py_ssize_t n2 = xr.shape[2]
    cdef Py_ssize_t Z = shifts.shape[0]
    cdef Py_ssize_t k, p, q, t
    cdef Py_ssize_t z0, z1, z2, a0, b0, a1, b1, a2, b2
    cdef double ar, ai
    for k in prange(Z, nogil=True, schedule="static"):
        z0 = shifts[k, 0]
        z1 = shifts[k, 1]
        z2 = shifts[k, 2]
        a0 = z0 if z0 > 0 else 0
        b0 = n0 + z0 if z0 < 0 else n0
        a1 = z1 if z1 > 0 else 0
        b1 = n1 + z1 if z1 < 0 else n1
        a2 = z2 if z2 > 0 else 0
        b2 = n2 + z2 if z2 < 0 else n2
        ar = 0.0
        ai = 0.0
        for p in range(a0, b0):
            for q in range(a1, b1):
                for t in range(a2, b2):
                    ar = ar + xr[p, q, t] * yr[p - z0, q - z1, t - z2] \
                            + xi[p, q, t] * yi[p - z0, q - z1, t - z2]
                    ai = ai + xi[p, q, t] * yr[p - z0, q - z1, t - z2] \
                            - xr[p, q, t] * yi[p - z0, q - z1, t - z2]
        out2[k, 0] = ar
        out2[k, 1] = ai
