# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; see _pykernels.py for the reference versions."""

from libc.math cimport sqrt, hypot, fabs, fma, log, atan2, exp, cos, sin, M_PI
from libc.stdlib cimport malloc, free

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)

cdef double LANCZOS_G = 671.0 / 128.0
cdef double[15] LANCZOS_COEF = [
    0.999999999999997092,
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
]


cdef inline void _two_sum(double a, double b, double *s, double *e) nogil:
    cdef double t, bb
    t = a + b
    bb = t - a
    s[0] = t
    e[0] = (a - (t - bb)) + (b - bb)


cdef inline void _dd_sum5(double *v, double *hi, double *lo) nogil:
    # cascaded two-sum; the error terms are small and summed plainly
    cdef double s = v[0], e, err = 0.0
    cdef int i
    for i in range(1, 5):
        _two_sum(s, v[i], &s, &e)
        err += e
    _two_sum(s, err, hi, lo)


def lanczos_gamma(z):
    cdef double complex w = <double complex>complex(z)
    cdef double complex x = LANCZOS_COEF[0]
    cdef int i
    for i in range(1, 15):
        x = x + LANCZOS_COEF[i] / (w + i)
    x = x / w
    cdef double u = creal(w) + 0.5, y = cimag(w)
    cdef double tr = creal(w) + LANCZOS_G
    cdef double L = log(hypot(tr, y)), th = atan2(y, tr)
    cdef double p1 = u * L, p2 = y * th, p3 = u * th, p4 = y * L
    cdef double v[5]
    cdef double re_hi, re_lo, im_hi, im_lo
    v[0] = p1; v[1] = fma(u, L, -p1); v[2] = -p2; v[3] = -fma(y, th, -p2); v[4] = -tr
    _dd_sum5(v, &re_hi, &re_lo)
    v[0] = p3; v[1] = fma(u, th, -p3); v[2] = p4; v[3] = fma(y, L, -p4); v[4] = -y
    _dd_sum5(v, &im_hi, &im_lo)
    cdef double mag = exp(re_hi) * (1.0 + re_lo)
    cdef double c = cos(im_hi), s = sin(im_hi)
    cdef double complex r = sqrt(2.0 * M_PI) * mag * ((c - im_lo * s) + 1j * (s + im_lo * c)) * x
    return complex(creal(r), cimag(r))


def hyp_series(upper, lower, z, double tol, long max_terms, long n_stop):
    cdef Py_ssize_t nu = len(upper)
    cdef Py_ssize_t nl = len(lower)
    cdef double complex *up = <double complex *>malloc((nu + 1) * sizeof(double complex))
    cdef double complex *lo = <double complex *>malloc((nl + 1) * sizeof(double complex))
    cdef Py_ssize_t i
    for i in range(nu):
        up[i] = <double complex>complex(upper[i])
    for i in range(nl):
        lo[i] = <double complex>complex(lower[i])
    cdef double complex zz = <double complex>complex(z)
    cdef double sr = 1.0, si = 0.0, cr = 0.0, ci = 0.0, y, t
    cdef double complex term = 1.0
    cdef double complex num, den
    cdef double sum_abs = 1.0, mag, dropped = 0.0
    cdef int small = 0
    cdef long k = 0
    cdef bint converged = True
    try:
        while True:
            if n_stop >= 0 and k >= n_stop:
                return complex(sr, si), 0.0, k + 1, sum_abs, True
            if k >= max_terms:
                return complex(sr, si), cabs(term), k + 1, sum_abs, False
            num = 1.0
            for i in range(nu):
                num = num * (up[i] + k)
            den = 1.0
            for i in range(nl):
                den = den * (lo[i] + k)
            term = term * num / den * zz / (k + 1)
            k += 1
            mag = cabs(term)
            if n_stop < 0:
                if mag <= tol * hypot(sr, si):
                    small += 1
                    if small == 3:
                        return complex(sr, si), mag, k, sum_abs, True
                else:
                    small = 0
            sum_abs += mag
            y = creal(term) - cr
            t = sr + y
            cr = (t - sr) - y
            sr = t
            y = cimag(term) - ci
            t = si + y
            ci = (t - si) - y
            si = t
    finally:
        free(up)
        free(lo)


def norlund_table(psis, shifts, long J):
    cdef Py_ssize_t stages = len(psis)
    cdef double complex *h = <double complex *>malloc((J + 1) * sizeof(double complex))
    cdef double complex *nw = <double complex *>malloc((J + 1) * sizeof(double complex))
    cdef double complex *tmp
    cdef double complex hi, r, a, c, psi
    cdef long i, d, m
    try:
        for i in range(J + 1):
            h[i] = 0.0
        h[0] = 1.0
        for m in range(stages):
            psi = <double complex>complex(psis[m])
            c = <double complex>complex(shifts[m])
            for i in range(J + 1):
                nw[i] = 0.0
            for i in range(J + 1):
                hi = h[i]
                if hi == 0:
                    continue
                r = 1.0
                a = psi + i
                for d in range(J - i + 1):
                    nw[i + d] = nw[i + d] + hi * r
                    r = r * (a + d) * (c + d) / ((d + 1.0) * (i + 1.0 + d))
            tmp = h
            h = nw
            nw = tmp
        return [complex(creal(h[i]), cimag(h[i])) for i in range(J + 1)]
    finally:
        free(h)
        free(nw)
