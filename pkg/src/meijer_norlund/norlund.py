"""The Meijer-Norlund function G^{p,0}_{p,p} on (0, 1).

Public parameters follow the (a, b) convention in which

    G_0(t) = G^{p,0}_{p,p}(t | b-1; a-1)

and the unit shift is applied here.  Near t = 1 the function is summed from
Norlund's expansion in powers of 1-t; near t = 0 from the sum of p
hypergeometric series (valid when no two a_i differ by an integer).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .core import INTEGER_TOL, EvalResult, Method, ParamVectors, as_complex, nearest_integer
from .errors import DegenerateParametersError, DomainError, IllConditionedError
from .gamma import gamma_vec, reciprocal_gamma, rgamma_vec
from .hypergeom import EPS, pfq
from .kernels import norlund_table

J_START = 60
J_CAP = 200
# a_i - a_j this close to an integer (but not within INTEGER_TOL) makes the
# origin expansion lose too many digits to Gamma(a_i - a_j)
GUARD_BAND = 1e-4

_memo: dict = {}


def _order_for_pivot(A, B, pivot):
    """Swap A[pivot] into the last position (0-based pivot)."""
    A = list(A)
    A[pivot], A[-1] = A[-1], A[pivot]
    return A, list(B)


def _scaled_coeffs(A, B, pivot: int, J: int):
    """h_j = g_j / j! for j = 0..J (0-based pivot).  Cached."""
    key = (tuple(A), tuple(B), pivot, J)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    A2, B2 = _order_for_pivot(A, B, pivot)
    p = len(A2)
    psis = []
    shifts = []
    acc = 0j
    for m in range(p - 1):
        acc += B2[m] - A2[m]
        psis.append(acc)
        shifts.append(B2[m + 1] - A2[m])
    h = tuple(norlund_table(psis, shifts, J))
    if len(_memo) > 4096:
        _memo.clear()
    _memo[key] = h
    return h


@dataclass(frozen=True)
class NorlundCoeffs:
    pivot: int
    values: tuple
    params: ParamVectors


def norlund_coeffs(params: ParamVectors, pivot: int, J: int) -> NorlundCoeffs:
    """g_0..g_J for the given 1-based pivot.

    The coefficients depend on the parameters only through differences, so
    the unit shift of the convention is immaterial here.
    """
    if not 1 <= pivot <= params.p:
        raise ValueError(f"pivot must lie in 1..{params.p}")
    if not 0 <= J <= J_CAP:
        raise ValueError(f"J must lie in 0..{J_CAP}")
    h = _scaled_coeffs(params.a, params.b, pivot - 1, J)
    out = []
    fact = 1.0
    for j, x in enumerate(h):
        if j:
            fact *= j
        v = x * fact
        if not cmath.isfinite(v):
            raise OverflowError(f"Norlund coefficient g_{j} overflows binary64")
        out.append(v)
    return NorlundCoeffs(pivot, tuple(out), params)


def default_pivot(A) -> int:
    return min(range(len(A)), key=lambda i: A[i].real)


def _cpow(t: float, e: complex) -> complex:
    return cmath.exp(e * math.log(t))


def norlund_sum(A: Sequence[complex], B: Sequence[complex], t: float, *,
                pivot: int | None = None, tc: float | None = None,
                tol: float = 1e-16) -> EvalResult:
    """G^{p,0}_{p,p}(t | B; A) from the expansion around t = 1 (no shift).

    ``tc`` optionally supplies 1 - t computed without cancellation.
    """
    A = tuple(complex(x) for x in A)
    B = tuple(complex(x) for x in B)
    u = (1.0 - t) if tc is None else tc
    if not (0.0 < u < 1.0):
        raise DomainError(f"expansion around 1 needs 0 < t < 1, got {t}")
    k = default_pivot(A) if pivot is None else pivot
    psi = sum(B) - sum(A)
    l = nearest_integer(psi)
    snapped = l is not None and l <= 0
    J = J_START
    while True:
        h = _scaled_coeffs(A, B, k, J)
        if snapped:
            value, tail, sabs, count = _sum_snapped(h, -l, u)
        else:
            value, tail, sabs, count = _sum_generic(h, psi, u)
        done = tail <= tol * abs(value) or (value == 0 and tail == 0)
        if done or J >= J_CAP:
            break
        J = min(2 * J, J_CAP)
    pre = _cpow(t, A[k])
    if not snapped:
        pre *= _cpow(u, psi - 1.0)
    err = abs(pre) * (tail + 4 * EPS * sabs * math.sqrt(count))
    return EvalResult(pre * value, err, count, Method.UNITY_SERIES)


def _tail_estimate(terms, u):
    last = max(abs(x) for x in terms[-4:])
    if u >= 0.999:
        return last * 1e3
    return 4.0 * last * u / (1.0 - u)


def _sum_generic(h, psi, u):
    w = reciprocal_gamma(psi)
    s = 0j
    sabs = 0.0
    terms = []
    up = 1.0
    for j, x in enumerate(h):
        term = x * w * up
        terms.append(term)
        s += term
        sabs += abs(term)
        w = w * (j + 1) / (psi + j)
        up *= u
    return s, _tail_estimate(terms, u), sabs, len(h)


def _sum_snapped(h, l, u):
    s = 0j
    sabs = 0.0
    terms = []
    up = 1.0
    J = len(h) - 1
    for i in range(J - l):
        f = 1.0
        for r in range(1, l + 2):
            f *= i + r
        term = h[i + l + 1] * f * up
        terms.append(term)
        s += term
        sabs += abs(term)
        up *= u
    if not terms:
        return 0j, 0.0, 0.0, 1
    return s, _tail_estimate(terms, u), sabs, len(terms)


def coincidence_distance(a: Sequence[complex]) -> float:
    """Smallest distance of any a_i - a_j (i != j) from an integer."""
    best = math.inf
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            d = a[i] - a[j]
            best = min(best, math.hypot(d.real - round(d.real), d.imag))
    return best


def check_origin_route(a: Sequence[complex]):
    d = coincidence_distance(a)
    if d <= INTEGER_TOL:
        raise DegenerateParametersError("some a_i - a_j is an integer; origin expansion has poles")
    if d < GUARD_BAND:
        raise IllConditionedError(
            f"a_i - a_j lies within {d:.3g} of an integer; origin expansion is ill-conditioned")


def origin_sum(params: ParamVectors, t: float) -> EvalResult:
    """G_0(t) as a sum of p hypergeometric series in t (public, unshifted params)."""
    a, b = params.a, params.b
    check_origin_route(a)
    total = 0j
    err = 0.0
    sabs = 0.0
    count = 0
    for k, ak in enumerate(a):
        others = a[:k] + a[k + 1:]
        coef = gamma_vec([x - ak for x in others]) * rgamma_vec([x - ak for x in b])
        if coef == 0:
            continue
        res = pfq([1 + ak - x for x in b], [1 + ak - x for x in others], t)
        term = coef * _cpow(t, ak - 1.0) * res.value
        total += term
        sabs += abs(term)
        err += abs(coef * _cpow(t, ak - 1.0)) * res.abs_err
        count += res.count
    err += 8 * EPS * sabs
    return EvalResult(total, err, max(count, 1), Method.ORIGIN_SERIES)


def eval_g0(params: ParamVectors, t: float, J: int | None = None, *,
            route: str = "auto", tc: float | None = None) -> EvalResult:
    """G_0(t) = G^{p,0}_{p,p}(t | b-1; a-1) for 0 < t < 1.

    route: "auto" (series around 1 for t > 0.5, around 0 otherwise),
    "unity" or "origin" to force one expansion.  ``tc`` may carry 1 - t.
    """
    t = float(t)
    if not (0.0 < t < 1.0 or (t == 1.0 and tc is not None and tc > 0)):
        raise DomainError(f"eval_g0 needs 0 < t < 1, got {t}")
    A = [x - 1 for x in params.a]
    B = [x - 1 for x in params.b]
    if route == "unity" or (route == "auto" and t > 0.5):
        return norlund_sum(A, B, t, tc=tc)
    if route == "origin":
        return origin_sum(params, t)
    try:
        return origin_sum(params, t)
    except (DegenerateParametersError, IllConditionedError):
        res = norlund_sum(A, B, t, tc=tc)
        if res.abs_err <= 1e-12 * max(1.0, abs(res.value)):
            return res
        raise


@dataclass(frozen=True)
class QPolynomial:
    coeffs: tuple  # monomial coefficients c_0..c_m

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, s) -> complex:
        s = complex(s)
        out = 0j
        for c in reversed(self.coeffs):
            out = out * s + c
        return out


def _poly_mul_linear(poly, c):
    # poly * (s + c)
    out = [0j] * (len(poly) + 1)
    for i, x in enumerate(poly):
        out[i] += x * c
        out[i + 1] += x
    return out


def q_polynomial(params: ParamVectors, pivot: int = 1) -> QPolynomial:
    """Correction polynomial of the Mellin transform when psi = -m.

    q(s) = sum_j g_{m-j} (s + a_k - j)_j with the parameters read as the
    G-function's own (a, b); see mellin_rhs for how it enters with the shift.
    """
    m = params.snapped_psi()
    if m is None:
        raise DomainError(f"psi = {params.psi} is not a nonpositive integer")
    g = norlund_coeffs(params, pivot, m).values
    ak = params.a[pivot - 1]
    total = [0j] * (m + 1)
    for j in range(m + 1):
        poly = [1.0 + 0j]
        for i in range(j):
            poly = _poly_mul_linear(poly, ak - j + i)
        for i, x in enumerate(poly):
            total[i] += g[m - j] * x
    return QPolynomial(tuple(total))


def mellin_rhs(params: ParamVectors, s) -> complex:
    """Closed form of int_0^1 t^{s-1} G_0(t) dt."""
    s = as_complex(s)
    for x in params.a:
        if (s + x - 1).real <= 0:
            raise DomainError(f"Mellin transform needs Re(s + a_j - 1) > 0, got s = {s}")
    m = params.snapped_psi()
    if m is None and params.psi.real <= 0:
        raise DomainError("Mellin transform needs Re psi > 0 or psi a nonpositive integer")
    value = gamma_vec([x - 1 + s for x in params.a]) * rgamma_vec([x - 1 + s for x in params.b])
    if m is not None:
        value -= q_polynomial(params)(s - 1)
    return value
