"""Tanh-sinh (double-exponential) quadrature on (0, 1).

With t = 1/(1 + exp(-pi sinh tau)) the nodes crowd both endpoints doubly
exponentially, so algebraic endpoint singularities need no special care.
Each level halves the step and only evaluates the new (odd) nodes.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

from .core import EvalResult, Method
from .errors import DomainError, NonConvergenceError

TAU_MAX = 6.0
MIN_LEVEL = 3
MAX_LEVEL = 12
_EPS = 2.220446049250313e-16
_TINY = 1e-290


@lru_cache(maxsize=None)
def _level_nodes(level: int) -> tuple:
    """(t, 1-t, weight) for the nodes first appearing at this level (h = 2^-level)."""
    h = 2.0 ** -level
    if level == 0:
        ks = range(-int(TAU_MAX), int(TAU_MAX) + 1)
    else:
        kmax = int(TAU_MAX / h)
        ks = [k for k in range(-kmax, kmax + 1) if k % 2]
    out = []
    for k in ks:
        tau = k * h
        s = math.pi * math.sinh(tau)
        # exp(-s) overflows only far outside TAU_MAX
        if s >= 0:
            e = math.exp(-s)
            x = 1.0 / (1.0 + e)
            xc = e / (1.0 + e)
        else:
            e = math.exp(s)
            x = e / (1.0 + e)
            xc = 1.0 / (1.0 + e)
        w = math.pi * math.cosh(tau) * x * xc
        if w < _TINY:
            continue
        out.append((x, xc, w))
    return tuple(out)


def integrate01(f: Callable, tol: float = 1e-11, *, pair: bool = False,
                square: bool = False, min_level: int = MIN_LEVEL,
                max_level: int = MAX_LEVEL) -> EvalResult:
    """Integrate f over (0, 1).

    pair=True calls f(t, 1-t) with the complement computed accurately.
    square=True integrates by the substitution t = u^2 (useful when f is
    naturally a function of sqrt(t)).
    """
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    if square:
        g = f
        if pair:
            def f(u, uc):
                return 2.0 * u * g(u * u, uc * (1.0 + u))
        else:
            def f(u, uc):
                return 2.0 * u * g(u * u)
        pair = True

    def call(x, xc):
        return f(x, xc) if pair else f(x)

    total = 0j
    mag = 0.0
    count = 0
    prev = None
    for level in range(max_level + 1):
        h = 2.0 ** -level
        for x, xc, w in _level_nodes(level):
            if not pair and (x == 1.0 or x == 0.0):
                continue
            v = complex(call(x, xc)) * w
            if v != v or abs(v) == math.inf:
                raise DomainError(f"integrand is not finite near t = {x}")
            total += v
            mag += abs(v)
            count += 1
        est = total * h
        if prev is not None and level >= min_level:
            diff = abs(est - prev)
            if diff <= tol * max(1.0, abs(est)):
                err = diff + 10 * _EPS * h * mag
                return EvalResult(est, err, count, Method.QUADRATURE)
        prev = est
    raise NonConvergenceError(
        f"tanh-sinh did not reach tolerance {tol} by level {max_level}",
        partial=prev, abs_err=abs(est - prev) if prev is not None else None)


def fractional_primitive(spec, m: int, x: float, tol: float = 1e-11) -> EvalResult:
    """(1/(n-m-1)!) * int_0^x Ghat_m(t) (x-t)^{n-m-1} dt, by quadrature.

    Independent check of Ghat_n (Gamma(a)-normalized like eval_ghat).
    """
    from .ghat import GHatSpec, eval_ghat

    n = spec.n
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    if not m + spec.params.a_min > 0:
        raise DomainError("fractional_primitive needs m + a_min > 0")
    if not 0.0 < x <= 1.0:
        raise DomainError("need 0 < x <= 1")
    inner = GHatSpec(spec.params, m)
    k = n - m - 1
    xm = 1.0 - x

    def f(v, vc):
        return eval_ghat(inner, x * v, tc=xm + x * vc).value * vc ** k

    res = integrate01(f, tol, pair=True)
    scale = x ** (k + 1) / math.factorial(k)
    return EvalResult(res.value * scale, res.abs_err * scale, res.count, Method.QUADRATURE)
