"""Pure-Python inner loops.

These mirror the compiled versions in ``_ckernels.pyx`` one for one and are
used when the extension is not built (or when ``MEIJER_NORLUND_PURE=1``).
"""

import cmath
import math

LANCZOS_G = 671.0 / 128.0
LANCZOS_COEF = (
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
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _two_prod(a, b):
    # Dekker: a*b = p + e exactly (no fma before Python 3.13)
    p = a * b
    if abs(a) > 1e150 or abs(b) > 1e150:
        return p, 0.0
    c = 134217729.0 * a
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_sum(parts):
    s = math.fsum(parts)
    return s, math.fsum(parts + [-s])


def lanczos_gamma(z):
    """Gamma for Re z >= 0.5 (no reflection here).

    The exponent (z - 1/2) log t - t is formed in double-double so that the
    phase, which grows like |Im z| log|z|, keeps full relative accuracy.
    """
    z = complex(z)
    x = LANCZOS_COEF[0]
    for i in range(1, 15):
        x += LANCZOS_COEF[i] / (z + i)
    x /= z
    u, y = z.real + 0.5, z.imag
    tr = z.real + LANCZOS_G
    L = math.log(math.hypot(tr, y))
    th = math.atan2(y, tr)
    p1, e1 = _two_prod(u, L)
    p2, e2 = _two_prod(y, th)
    p3, e3 = _two_prod(u, th)
    p4, e4 = _two_prod(y, L)
    re_hi, re_lo = _dd_sum([p1, e1, -p2, -e2, -tr])
    im_hi, im_lo = _dd_sum([p3, e3, p4, e4, -y])
    mag = math.exp(re_hi) * (1.0 + re_lo)
    c, s = math.cos(im_hi), math.sin(im_hi)
    w = complex(c - im_lo * s, s + im_lo * c)
    return _SQRT_2PI * mag * w * x


def hyp_series(upper, lower, z, tol, max_terms, n_stop):
    """Sum the hypergeometric series sum_k (upper)_k/(lower)_k z^k/k!.

    If ``n_stop >= 0`` exactly the terms 0..n_stop are summed.  Otherwise the
    sum stops once three consecutive terms fall below ``tol*|partial|``.

    Returns ``(value, dropped, count, sum_abs, converged)`` where ``dropped`` is
    the magnitude of the first term not added and ``sum_abs`` the sum of the
    term magnitudes (used for cancellation estimates).
    """
    z = complex(z)
    # Kahan compensation, real and imaginary parts kept separately
    sr = 1.0
    si = 0.0
    cr = 0.0
    ci = 0.0
    term = 1.0 + 0.0j
    sum_abs = 1.0
    small = 0
    dropped = 0.0
    k = 0
    while True:
        if n_stop >= 0 and k >= n_stop:
            return complex(sr, si), 0.0, k + 1, sum_abs, True
        if k >= max_terms:
            return complex(sr, si), abs(term), k + 1, sum_abs, False
        num = 1.0 + 0.0j
        for u in upper:
            num *= u + k
        den = 1.0 + 0.0j
        for v in lower:
            den *= v + k
        term = term * num / den * z / (k + 1)
        k += 1
        mag = abs(term)
        if n_stop < 0:
            if mag <= tol * math.hypot(sr, si):
                small += 1
                if small == 3:
                    dropped = mag
                    return complex(sr, si), dropped, k, sum_abs, True
            else:
                small = 0
        sum_abs += mag
        y = term.real - cr
        t = sr + y
        cr = (t - sr) - y
        sr = t
        y = term.imag - ci
        t = si + y
        ci = (t - si) - y
        si = t


def norlund_table(psis, shifts, J):
    """Scaled Norlund coefficients h_j = g_j / j!, j = 0..J.

    The ordered multi-index sum is accumulated stage by stage: stage m moves
    the chain from j_{m-1} = i to j_m = i + d with weight
    (psi_m + i)_d (c_m)_d / (d! (i+1)_d), the 1/j! scaling keeping every
    intermediate bounded.
    """
    h = [0j] * (J + 1)
    h[0] = 1.0 + 0j
    for psi, c in zip(psis, shifts):
        new = [0j] * (J + 1)
        for i in range(J + 1):
            hi = h[i]
            if hi == 0:
                continue
            r = 1.0 + 0j
            a = psi + i
            for d in range(J - i + 1):
                new[i + d] += hi * r
                r = r * (a + d) * (c + d) / ((d + 1) * (i + 1 + d))
        h = new
    return h
