"""Closed and series forms of Ghat_n for p = 1 and p = 2.

These are independent of the Norlund recursion and serve as cross-checks.
Values are G^{p,1}_{p+1,p+1} itself (not divided by Gamma(a)).
"""

from __future__ import annotations

import math

from .core import as_complex_tuple, nearest_integer
from .errors import DomainError, NonConvergenceError
from .gamma import gamma, gamma_vec, pochhammer, rgamma, rgamma_vec
from .hypergeom import pfq, terminating_over_gamma


def _p2(a, b):
    a = as_complex_tuple(a)
    b = as_complex_tuple(b)
    if len(a) != 2 or len(b) != 2:
        raise ValueError("p = 2 forms need two a and two b parameters")
    return a, b, b[0] + b[1] - a[0] - a[1]


def _big_first(a):
    # G^{2,0} is symmetric in a1, a2; the series below decay like k^(-a1-1)
    return a if a[0].real >= a[1].real else (a[1], a[0])


def _check_psi(psi):
    m = nearest_integer(psi)
    if m is not None and m <= 0:
        raise DomainError("this form needs -psi outside the nonnegative integers")


def _tail_poly(a, b, n: int, t: float) -> complex:
    # t^{n-1} Gamma(a)/(Gamma(b) (n-1)!) F(1-n, a; b; 1/t)
    if n == 0:
        return 0j
    up = (1 - n,) + tuple(a)
    f = terminating_over_gamma(up, b, 1.0 / t).value
    return t ** (n - 1) * gamma_vec(a) * f / math.factorial(n - 1)


def p1_primitive_lhs(a, b, n: int, x: float) -> complex:
    a, b = complex(a), complex(b)
    psi = b - a
    return (x ** (a + n - 1) * rgamma(psi) / pochhammer(a, n)
            * pfq([a, 1 - psi], [a + n], x).value)


def p1_primitive_rhs(a, b, n: int, x: float) -> complex:
    a, b = complex(a), complex(b)
    psi = b - a
    first = ((-1) ** n * (1 - x) ** (psi + n - 1) * rgamma(psi + n)
             * pfq([1 - a, psi], [psi + n], 1 - x).value)
    return first + _tail_poly((a,), (b,), n, x)


def g2133_form1(a, b, n: int, t: float, tol: float = 1e-15, max_terms: int = 200000) -> complex:
    """Series of 2F1(a2, 1-psi-k; a2+n; t) weighted by the 2F1 coefficients at 1-x.

    Terms decay like k^(-a1-1) (a1 is taken as the larger of the two), so this
    is only practical for Re a1 well above 1; an integral tail correction is
    added at the cut.
    """
    a, b, psi = _p2(a, b)
    (a1, a2), (b1, b2) = _big_first(a), b
    _check_psi(psi)
    if not a1.real > 0:
        raise DomainError("form 1 needs Re a1 > 0")
    A, C = a2, a2 + n
    beta = 1 - psi
    F_prev = pfq([A, beta], [C], t).value
    F_cur = pfq([A, beta - 1], [C], t).value
    w = 1.0 + 0j
    total = w * F_prev
    k = 0
    small = 0
    while k < max_terms:
        w *= (b1 - a1 + k) * (b2 - a1 + k) / ((psi + k) * (k + 1))
        k += 1
        term = w * F_cur
        total += term
        if abs(term) * k <= tol * abs(total) * a1.real:
            small += 1
            if small >= 3:
                total += term * k / a1
                break
        else:
            small = 0
        # contiguous relation in the second upper parameter, stepping it down by one
        bb = beta - k
        F_next = -((2 * bb - C + (A - bb) * t) * F_cur + bb * (t - 1) * F_prev) / (C - bb)
        F_prev, F_cur = F_cur, F_next
    else:
        raise NonConvergenceError("form 1 series did not converge", partial=total)
    return t ** (a2 - 1 + n) * rgamma(psi) / pochhammer(a2, n) * total


def g2133_form2(a, b, n: int, t: float, tol: float = 1e-12, max_terms: int = 20000) -> complex:
    """Euler-transformed double series; same algebraic decay as form 1."""
    a, b, psi = _p2(a, b)
    (a1, a2), (b1, b2) = _big_first(a), b
    _check_psi(psi)
    if not a1.real > 0:
        raise DomainError("form 2 needs Re a1 > 0")
    s = a2 + psi + n - 1
    total = 0j
    coef = 1.0 + 0j
    small = 0
    for k in range(max_terms):
        f = pfq([b1 - a1, b2 - a1, s + k], [psi, s], 1 - t).value
        term = coef * f
        total += term
        if k and abs(term) * k <= tol * abs(total) * a1.real:
            small += 1
            if small >= 3:
                total += term * k / a1
                break
        else:
            small = 0
        coef *= (n + k) * (s + k) / ((a2 + n + k) * (k + 1)) * t
    else:
        raise NonConvergenceError("form 2 series did not converge", partial=total)
    pre = t ** (a2 - 1 + n) * (1 - t) ** (psi + n - 1) * rgamma(psi) / pochhammer(a2, n)
    return pre * total


def g2133_form3(a, b, n: int, t: float) -> complex:
    (a1, a2), (b1, b2), _ = _p2(a, b)
    if nearest_integer(a1 - a2) is not None:
        raise DomainError("form 3 needs a1 - a2 outside the integers")
    out = 0j
    for x, y in ((a1, a2), (a2, a1)):
        pre = gamma(y - x) * t ** (x + n - 1) / pochhammer(x, n) * rgamma_vec([b1 - x, b2 - x])
        out += pre * pfq([x, x - b1 + 1, x - b2 + 1], [x - y + 1, x + n], t).value
    return out


def g2133_form4(a, b, n: int, t: float, tol: float = 1e-17) -> complex:
    """Expansion around t = 1 with the p = 3 Norlund coefficients in closed form."""
    (a1, a2), (b1, b2), psi = _p2(a, b)
    u = 1 - t
    c1, c2 = psi - b1 + 1, psi - b2 + 1
    total = 0j
    coef = 1.0 + 0j
    small = 0
    for k in range(5000):
        f = pfq([-k, 1 - a1, 1 - a2], [c1, c2], 1.0).value
        term = coef * f
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        coef *= (c1 + k) * (c2 + k) / ((psi + n + k) * (k + 1)) * u
    else:
        raise NonConvergenceError("form 4 series did not converge", partial=total)
    first = (-1) ** n * u ** (psi + n - 1) * rgamma(psi + n) * total
    return first + _tail_poly((a1, a2), (b1, b2), n, t)
