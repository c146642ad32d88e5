# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels.  See ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, exp, log, sqrt, cosh, acosh, fabs, M_PI

from .errors import IntegerOverflowError

cnp.import_array()

cdef extern from *:
    bint __builtin_saddll_overflow(long long a, long long b, long long *res) nogil


def dirichlet_partial(t, double sigma, long n_max):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef Py_ssize_t nt = tv.shape[0]
    out = np.zeros(nt, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef double[::1] logn = np.log(np.arange(1, max(n_max, 0) + 1, dtype=np.float64))
    cdef double[::1] amp = np.exp(-sigma * np.asarray(logn))
    cdef Py_ssize_t i, n
    cdef double sr, si, cr, ci, y, tt, ph, a
    with nogil:
        for i in range(nt):
            sr = 0.0
            si = 0.0
            cr = 0.0
            ci = 0.0
            for n in range(n_max):
                ph = -tv[i] * logn[n]
                a = amp[n]
                y = a * cos(ph) - cr
                tt = sr + y
                cr = (tt - sr) - y
                sr = tt
                y = a * sin(ph) - ci
                tt = si + y
                ci = (tt - si) - y
                si = tt
            ov[i] = sr + 1j * si
    return out.reshape(np.shape(t))


def rs_main(t, theta, m):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef double[::1] thv = np.ascontiguousarray(theta, dtype=np.float64).ravel()
    cdef long long[::1] mv = np.ascontiguousarray(m, dtype=np.int64).ravel()
    cdef Py_ssize_t nt = tv.shape[0]
    out = np.zeros(nt, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef long long n
    cdef double s, c, y, tt, dn
    with nogil:
        for i in range(nt):
            s = 0.0
            c = 0.0
            for n in range(1, mv[i] + 1):
                dn = <double>n
                y = cos(thv[i] - tv[i] * log(dn)) / sqrt(dn) - c
                tt = s + y
                c = (tt - s) - y
                s = tt
            ov[i] = s
    return out.reshape(np.shape(t))


def unimodular_sum(long long start, long long stop, double t):
    cdef long long n
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0, y, tt, ph
    if stop < start:
        return 0j
    with nogil:
        for n in range(start, stop + 1):
            ph = t * log(<double>n)
            y = cos(ph) - cr
            tt = sr + y
            cr = (tt - sr) - y
            sr = tt
            y = sin(ph) - ci
            tt = si + y
            ci = (tt - si) - y
            si = tt
    return complex(sr, si)


cdef inline void _kahan(double *s, double *c, double v) noexcept nogil:
    cdef double y = v - c[0]
    cdef double t = s[0] + y
    c[0] = (t - s[0]) - y
    s[0] = t


def weyl_parts(long M, double t, n_values, w):
    cdef long long[::1] nv = np.ascontiguousarray(n_values, dtype=np.int64)
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef double[::1] zr = np.empty(M, dtype=np.float64)
    cdef double[::1] zi = np.empty(M, dtype=np.float64)
    cdef Py_ssize_t j, a, b
    cdef double ph, ir, ii, ci_r, ci_i, dsum, dc, osum, oc
    cdef double tot = 0.0, totc = 0.0, dia = 0.0, diac = 0.0, off = 0.0, offc = 0.0
    with nogil:
        for j in range(nv.shape[0]):
            ir = 0.0
            ii = 0.0
            ci_r = 0.0
            ci_i = 0.0
            dsum = 0.0
            dc = 0.0
            for a in range(M):
                ph = t * log(<double>(a + 1 + nv[j]))
                zr[a] = cos(ph)
                zi[a] = sin(ph)
                _kahan(&ir, &ci_r, zr[a])
                _kahan(&ii, &ci_i, zi[a])
                _kahan(&dsum, &dc, zr[a] * zr[a] + zi[a] * zi[a])
            osum = 0.0
            oc = 0.0
            for a in range(M):
                for b in range(a + 1, M):
                    _kahan(&osum, &oc, zr[a] * zr[b] + zi[a] * zi[b])
            _kahan(&tot, &totc, wv[j] * (ir * ir + ii * ii))
            _kahan(&dia, &diac, wv[j] * dsum)
            _kahan(&off, &offc, wv[j] * 2.0 * osum)
    return tot, dia, off


def divisor_counts(long n_max):
    out = np.zeros(n_max + 1, dtype=np.int32)
    cdef int[::1] d = out
    cdef long k, j
    with nogil:
        for k in range(1, n_max + 1):
            j = k
            while j <= n_max:
                d[j] += 1
                j += k
    return out


def det_partition(table, long B):
    cdef long long[:, :, :, ::1] f = np.ascontiguousarray(table, dtype=np.int64)
    cdef long long sz = 0, sp = 0, sn = 0, tot = 0, det, v
    cdef long k, l, n, m
    cdef bint overflow = False
    with nogil:
        for k in range(-B, B + 1):
            for l in range(-B, B + 1):
                for n in range(-B, B + 1):
                    for m in range(-B, B + 1):
                        v = f[k + B, l + B, n + B, m + B]
                        det = <long long>k * m - <long long>l * n
                        if det == 0:
                            overflow |= __builtin_saddll_overflow(sz, v, &sz)
                        elif det > 0:
                            overflow |= __builtin_saddll_overflow(sp, v, &sp)
                        else:
                            overflow |= __builtin_saddll_overflow(sn, v, &sn)
    if overflow:
        raise IntegerOverflowError("partition sum left the int64 range")
    if __builtin_saddll_overflow(sz, sp, &tot) or __builtin_saddll_overflow(tot, sn, &tot):
        raise IntegerOverflowError("partition total left the int64 range")
    return int(sz), int(sp), int(sn), int(tot)


cdef double _k_series(double r, double x, double amp, double arg_gamma) noexcept nogil:
    cdef double q = 0.25 * x * x
    cdef double complex term = 1.0
    cdef double complex s = 1.0
    cdef long k = 1
    cdef double phase
    while True:
        term = term * q / (k * (k + 1j * r))
        s = s + term
        if fabs(term.real) + fabs(term.imag) <= 1e-17 * (fabs(s.real) + fabs(s.imag)) or k > 400:
            break
        k += 1
    phase = r * log(0.5 * x) - arg_gamma
    return -amp * (sin(phase) * s.real + cos(phase) * s.imag)


cdef double _k_trapezoid(double r, double x) noexcept nogil:
    cdef double h = 2.0 * M_PI / (fabs(r) + 0.46 * x + 45.0)
    cdef double tmax = acosh(1.0 + 40.0 / x)
    cdef double s = 0.5 * exp(-x)
    cdef long j = 1
    cdef double tj = h
    while tj < tmax + h:
        s += exp(-x * cosh(tj)) * cos(r * tj)
        j += 1
        tj = j * h
    return h * s


def bessel_kir(double r, x, double amp, double arg_gamma):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef double xlim = r if r > 2.0 else 2.0
    with nogil:
        for i in range(xv.shape[0]):
            if r >= 0.5 and xv[i] <= xlim:
                ov[i] = _k_series(r, xv[i], amp, arg_gamma)
            else:
                ov[i] = _k_trapezoid(r, xv[i])
    return out.reshape(np.shape(x))
