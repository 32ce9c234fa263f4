"""Generalized hypergeometric series pFq.

The series is summed in binary64 with compensated accumulation.  When the
terms are much larger than their sum (large negative arguments, long
alternating terminating sums) the binary64 result would be noise, so the
same series is re-summed with mpmath numbers at a working precision chosen
from the observed cancellation.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import mpmath

from .core import EvalResult, Method, as_complex, as_complex_tuple, nearest_integer
from .errors import DivergenceError, NonConvergenceError, PoleError
from .gamma import pochhammer_vec, reciprocal_gamma
from .kernels import hyp_series

EPS = 2.220446049250313e-16
SERIES_TOL = 1e-17
MAX_TERMS = 100000
# re-sum in extended precision once the estimated rounding error exceeds
# this fraction of the result (roughly three lost digits)
ESCALATE_REL = 1e-13
_PARAM_INT_TOL = 1e-12


def _cancel(upper, lower):
    up = list(upper)
    lo = []
    for v in lower:
        if v in up:
            up.remove(v)
        else:
            lo.append(v)
    return tuple(up), tuple(lo)


def terminating_order(upper) -> int | None:
    """N if some upper parameter equals -N (N >= 0); the smallest such N."""
    best = None
    for u in upper:
        k = nearest_integer(u, _PARAM_INT_TOL * max(1.0, abs(u)))
        if k is not None and k <= 0 and (best is None or -k < best):
            best = -k
    return best


def _check_lower(lower, n_stop):
    for v in lower:
        k = nearest_integer(v, _PARAM_INT_TOL * max(1.0, abs(v)))
        if k is not None and k <= 0 and (n_stop is None or n_stop > -k):
            raise PoleError(f"lower parameter {v} is a pole of the series", v)


def _snap_upper(upper):
    out = []
    for u in upper:
        k = nearest_integer(u, _PARAM_INT_TOL * max(1.0, abs(u)))
        out.append(complex(k) if (k is not None and k <= 0) else u)
    return tuple(out)


def pfq(upper: Sequence, lower: Sequence, z, *, tol: float = SERIES_TOL,
        max_terms: int = MAX_TERMS, escalate: bool = True) -> EvalResult:
    """Evaluate uFs(upper; lower; z)."""
    up, lo = _cancel(as_complex_tuple(upper), as_complex_tuple(lower))
    z = as_complex(z)
    n_stop = terminating_order(up)
    _check_lower(lo, n_stop)
    method = Method.TERMINATING if n_stop is not None else Method.POWER_SERIES
    if z == 0:
        return EvalResult(1.0 + 0j, 0.0, 1, method)
    if n_stop is not None:
        up = _snap_upper(up)
    else:
        u, s = len(up), len(lo)
        if u > s + 1:
            raise DivergenceError(f"{u}F{s} diverges for z != 0")
        if u == s + 1:
            r = abs(z)
            excess = (sum(lo) - sum(up)).real
            if r > 1.0 or (r == 1.0 and not excess > (0.0 if z == 1 else -1.0)):
                raise DivergenceError(f"{u}F{s} series does not converge at |z| = {r}")
            if r == 1.0 and z != 1 and z.real < 0.4:
                return _unit_circle(up, lo, z)
    value, dropped, count, sum_abs, ok = hyp_series(
        up, lo, z, tol, max_terms, -1 if n_stop is None else n_stop)
    if not ok:
        raise NonConvergenceError(
            f"series did not converge within {max_terms} terms", partial=value)
    rounding = EPS * sum_abs * (2.0 + 0.25 * math.sqrt(count))
    finite = math.isfinite(value.real) and math.isfinite(value.imag) and math.isfinite(sum_abs)
    if escalate and (not finite or rounding > ESCALATE_REL * abs(value)):
        return _pfq_extended(up, lo, z, n_stop, sum_abs, abs(value) if finite else 0.0, method)
    return EvalResult(value, 10.0 * dropped + rounding, count, method)


def _pfq_extended(up, lo, z, n_stop, sum_abs, approx, method):
    if approx > 0 and math.isfinite(sum_abs):
        lost = max(0.0, math.log10(sum_abs / approx))
    else:
        lost = 17.0
    dps = int(30 + lost)
    for _ in range(6):
        value, dropped, count, sabs, mag = _series_mp(up, lo, z, n_stop, dps)
        if mag > 0 and dps - math.log10(sabs / mag) >= 22:
            err = 10.0 * dropped + 1e-17 * mag
            return EvalResult(value, err, count, method)
        dps = int(2 * dps if mag == 0 else dps + math.log10(sabs / mag) + 10)
        if dps > 4000:
            break
    return EvalResult(value, max(abs(value), 1.0) * 1e-10, count, method)


def _series_mp(up, lo, z, n_stop, dps):
    with mpmath.workdps(dps):
        ups = [mpmath.mpc(u) for u in up]
        los = [mpmath.mpc(v) for v in lo]
        zz = mpmath.mpc(z)
        term = mpmath.mpc(1)
        s = mpmath.mpc(1)
        sabs = mpmath.mpf(1)
        tol = mpmath.mpf(10) ** (-20)
        small = 0
        dropped = mpmath.mpf(0)
        k = 0
        while True:
            if n_stop is not None and k >= n_stop:
                break
            if k >= MAX_TERMS:
                raise NonConvergenceError("extended-precision series did not converge")
            num = mpmath.mpc(1)
            for u in ups:
                num *= u + k
            den = mpmath.mpc(1)
            for v in los:
                den *= v + k
            term = term * num / den * zz / (k + 1)
            k += 1
            mag = abs(term)
            if n_stop is None:
                if mag <= tol * abs(s):
                    small += 1
                    if small == 3:
                        dropped = mag
                        break
                else:
                    small = 0
            s += term
            sabs += mag
        return complex(s), float(dropped), k + 1, float(sabs), float(abs(s))


def _unit_circle(up, lo, w) -> EvalResult:
    """s+1Fs on |w| = 1, w != 1, where the series converges only conditionally.

    Rewritten as sum_j (c)_j z^j/j! (1+z)^{-c-j} F(-j, a; b; 1) with z = -w
    and c the first upper parameter; the terms shrink like |w/(1-w)|^j.
    """
    c, a = up[0], up[1:]
    z = -w
    ratio = abs(z / (1 + z))
    tab = unit_table(a, lo, 64)
    scale = 1.0 + 0j
    for v in lo:
        scale *= reciprocal_gamma(v)
    total = 0j
    sabs = 0.0
    coef = (1 + z) ** (-c)
    small = 0
    for j in range(MAX_TERMS):
        if j > tab.n_max:
            tab = unit_table(a, lo, 2 * tab.n_max)
        term = coef * tab.total(j) / scale
        mag = abs(term)
        if j > 5 and mag <= 1e-17 * abs(total):
            small += 1
            if small == 3:
                break
        else:
            small = 0
        total += term
        sabs += mag
        coef *= (c + j) * z / ((j + 1) * (1 + z))
    err = 10 * mag / max(1e-3, 1 - ratio) + 4 * EPS * sabs
    return EvalResult(total, err, j + 1, Method.POWER_SERIES)


def pfq_derivative(upper: Sequence, lower: Sequence, z, order: int, **kw) -> EvalResult:
    """d^order/dz^order of uFs(upper; lower; z), by shifting the parameters."""
    if order < 0 or order > 8:
        raise ValueError("order must be between 0 and 8")
    up = as_complex_tuple(upper)
    lo = as_complex_tuple(lower)
    if order == 0:
        return pfq(up, lo, z, **kw)
    n_stop = terminating_order(up)
    if n_stop is not None and n_stop < order:
        return EvalResult(0j, 0.0, 1, Method.TERMINATING)
    factor = pochhammer_vec(up, order) / pochhammer_vec(lo, order)
    res = pfq([u + order for u in up], [v + order for v in lo], z, **kw)
    return EvalResult(factor * res.value, abs(factor) * res.abs_err, res.count, res.method)


class UnitSums:
    """Terminating sums at unit argument, in extended precision.

    With c_i = (a)_i / Gamma(b + i) (entire in b), provides

        total(N) = pFq(-N, a; b; 1) / Gamma(b) = sum_i (-N)_i / i! * c_i

    whose terms alternate with binomial size, so they are accumulated with
    mpmath numbers at a precision growing with N.
    """

    def __init__(self, a, b, n_max: int):
        self.a = as_complex_tuple(a)
        self.b = as_complex_tuple(b)
        self.n_max = n_max
        self.dps = 40 + int(0.35 * n_max) + 5 * len(self.a)
        with mpmath.workdps(self.dps):
            self._c = self._sequence(n_max)
        self._totals = {}

    def _sequence(self, m):
        a = [mpmath.mpc(x) for x in self.a]
        scale = []
        poles = []
        for x in self.b:
            k = nearest_integer(x, _PARAM_INT_TOL * max(1.0, abs(x)))
            if k is not None and k <= 0:
                poles.append(-k)
            else:
                scale.append(x)
        base = mpmath.mpc(complex(1.0))
        for x in scale:
            base *= mpmath.mpc(reciprocal_gamma(x))
        bs = [mpmath.mpc(x) for x in scale]
        out = []
        num = mpmath.mpc(1)
        den = mpmath.mpc(1)
        for i in range(m + 1):
            if i > 0:
                for x in a:
                    num *= x + (i - 1)
                for x in bs:
                    den *= x + (i - 1)
            c = base * num / den
            for L in poles:
                c = 0 if i <= L else c / mpmath.factorial(i - L - 1)
            out.append(c)
        return out

    def c(self, i: int):
        return self._c[i]

    def total(self, N: int) -> complex:
        return complex(self.total_mp(N))

    def total_mp(self, N: int):
        if N > self.n_max:
            raise ValueError("N beyond table size")
        if N not in self._totals:
            with mpmath.workdps(self.dps):
                s = mpmath.mpc(0)
                binom = mpmath.mpf(1)
                for i in range(N + 1):
                    term = binom * self._c[i]
                    s += term if i % 2 == 0 else -term
                    binom = binom * (N - i) / (i + 1)
                self._totals[N] = s
        return self._totals[N]


@lru_cache(maxsize=256)
def unit_sums(a: tuple, b: tuple, n_max: int) -> UnitSums:
    """Shared UnitSums table (the table only grows in powers of two)."""
    return UnitSums(a, b, n_max)


def unit_table(a, b, n_max: int) -> UnitSums:
    size = 16
    while size < n_max:
        size *= 2
    return unit_sums(as_complex_tuple(a), as_complex_tuple(b), size)


def terminating_over_gamma(upper, lower, z) -> EvalResult:
    """uFs(upper; lower; z) / Gamma(lower) for a terminating series.

    Lower parameters at poles of Gamma are allowed: the result is the entire
    (regularized) function.
    """
    up = as_complex_tuple(upper)
    lo = as_complex_tuple(lower)
    n_stop = terminating_order(up)
    if n_stop is None:
        raise ValueError("series is not terminating")
    has_pole = any(
        (k := nearest_integer(v, _PARAM_INT_TOL * max(1.0, abs(v)))) is not None and k <= 0
        for v in lo)
    if not has_pole:
        res = pfq(up, lo, z)
        scale = 1.0 + 0j
        for v in lo:
            scale *= reciprocal_gamma(v)
        return EvalResult(res.value * scale, res.abs_err * abs(scale), res.count, res.method)
    up = _snap_upper(up)
    z = as_complex(z)
    with mpmath.workdps(40 + n_stop):
        s = mpmath.mpc(0)
        term = mpmath.mpc(1)
        for j in range(n_stop + 1):
            w = term
            for v in lo:
                w *= mpmath.mpc(reciprocal_gamma(v + j))
            s += w
            for u in up:
                term *= u + j
            term = term * z / (j + 1)
        value = complex(s)
    return EvalResult(value, 1e-15 * abs(value), n_stop + 1, Method.TERMINATING)
