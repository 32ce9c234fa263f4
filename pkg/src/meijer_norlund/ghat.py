"""Evaluation and asymptotic classification of Ghat_n(t)/Gamma(a).

Ghat_n is the G^{p,1}_{p+1,p+1} function with parameters (n, b+n-1; a+n-1, 0).
Everything here returns Ghat_n(t)/Gamma(a), which is entire in a.

Routes used by eval_ghat:

* some a_i a nonpositive integer: a terminating sum in 1/t;
* origin: sum of p hypergeometric series (needs no integer differences a_i - a_j);
* unity: the companion G^{p+1,0}_{p+1,p+1} function from its Norlund expansion,
  minus a polynomial in 1/t;
* otherwise symmetric epsilon-splitting of the coincident components.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

from .core import INTEGER_TOL, EvalResult, Method, ParamVectors, nearest_integer
from .errors import (
    AdmissibilityError,
    DegenerateParametersError,
    DomainError,
    IllConditionedError,
    MeijerError,
)
from .gamma import gamma_vec, pochhammer, pochhammer_vec, reciprocal_gamma, rgamma_vec
from .hypergeom import EPS, pfq, terminating_over_gamma, unit_table
from .norlund import (
    GUARD_BAND,
    check_origin_route,
    coincidence_distance,
    norlund_sum,
    q_polynomial,
)

EPS_SPLIT = 1e-5


@dataclass(frozen=True)
class GHatSpec:
    params: ParamVectors
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValueError(f"n must be a nonnegative integer, got {self.n!r}")

    @property
    def a(self):
        return self.params.a

    @property
    def b(self):
        return self.params.b

    def admissible(self) -> bool:
        """n > -min(a_min, Re psi), the condition for integrating Ghat_n."""
        return self.n > -min(self.params.a_min, self.params.psi.real)


def _integer_components(a):
    out = []
    for i, x in enumerate(a):
        k = nearest_integer(x)
        if k is not None and k <= 0:
            out.append((i, k))
    return out


def _snap_integers(a):
    a = list(a)
    for i, k in _integer_components(a):
        a[i] = complex(k)
    return tuple(a)


def _cpow(t: float, e: complex) -> complex:
    return cmath.exp(e * math.log(t))


# ---------------------------------------------------------------- routes


def _poly_term(a, b, n, t) -> EvalResult:
    """(-t)^{n-1}/(n-1)! * F(-n+1, a; b; 1/t)/Gamma(b), i.e. the connection polynomial."""
    if n == 0:
        return EvalResult(0j, 0.0, 1, Method.TERMINATING)
    res = terminating_over_gamma((1 - n,) + tuple(a), b, 1.0 / t)
    scale = (-t) ** (n - 1) / math.factorial(n - 1)
    return EvalResult(res.value * scale, res.abs_err * abs(scale), res.count, Method.TERMINATING)


def _integer_route(a, b, n, t) -> EvalResult:
    if n == 0:
        return EvalResult(0j, 0.0, 1, Method.TERMINATING)
    res = terminating_over_gamma((1 - n,) + _snap_integers(a), b, 1.0 / t)
    scale = t ** (n - 1) / math.factorial(n - 1)
    return EvalResult(res.value * scale, res.abs_err * abs(scale), res.count, Method.TERMINATING)


def origin_series(a, b, n: int, t: float, *, check: bool = True) -> EvalResult:
    """Sum over k of the p series at the origin."""
    if check:
        check_origin_route(a)
    total = 0j
    err = 0.0
    sabs = 0.0
    count = 0
    for k, ak in enumerate(a):
        others = a[:k] + a[k + 1:]
        coef = (gamma_vec([x - ak for x in others]) * rgamma_vec([x - ak for x in b])
                * reciprocal_gamma(ak + n) * rgamma_vec(others))
        if coef == 0:
            continue
        res = pfq((ak,) + tuple(1 + ak - x for x in b),
                  (ak + n,) + tuple(1 + ak - x for x in others), t)
        scale = coef * _cpow(t, ak + n - 1.0)
        term = scale * res.value
        total += term
        sabs += abs(term)
        err += abs(scale) * res.abs_err
        count += res.count
    err += 8 * EPS * sabs
    return EvalResult(total, err, max(count, 1), Method.ORIGIN_SERIES)


def tilde_g(a, b, n: int, t: float, tc: float | None = None) -> EvalResult:
    """The companion G^{p+1,0}_{p+1,p+1}(t | b+n-1, n; a+n-1, 0), not normalized."""
    A = tuple(x + n - 1 for x in a) + (0j,)
    B = tuple(x + n - 1 for x in b) + (complex(n),)
    return norlund_sum(A, B, t, tc=tc)


def unity_route(a, b, n: int, t: float, tc: float | None = None) -> EvalResult:
    if n == 0:
        res = norlund_sum([x - 1 for x in a], [x - 1 for x in b], t, tc=tc)
        r = rgamma_vec(a)
        return EvalResult(res.value * r, res.abs_err * abs(r), res.count, Method.UNITY_SERIES)
    g = tilde_g(a, b, n, t, tc)
    r = rgamma_vec(a)
    poly = _poly_term(a, b, n, t)
    gv = g.value * r
    sign = -1.0 if n % 2 else 1.0
    value = sign * (gv - poly.value)
    err = abs(r) * g.abs_err + poly.abs_err + 4 * EPS * (abs(gv) + abs(poly.value))
    return EvalResult(value, err, g.count + poly.count, Method.UNITY_SERIES)


def _coincidence_classes(a):
    classes = []
    for i, x in enumerate(a):
        for cls in classes:
            d = x - a[cls[0]]
            if abs(d.imag) < GUARD_BAND and abs(d.real - round(d.real)) < GUARD_BAND:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def epsilon_split(a, b, n: int, t: float, eps: float = EPS_SPLIT) -> EvalResult:
    """Average of the origin series at a +/- delta, delta separating coincident components."""
    delta = [0.0] * len(a)
    for cls in _coincidence_classes(a):
        for j, i in enumerate(cls):
            delta[i] = j * eps
    plus = origin_series(tuple(x + d for x, d in zip(a, delta)), b, n, t, check=False)
    minus = origin_series(tuple(x - d for x, d in zip(a, delta)), b, n, t, check=False)
    value = 0.5 * (plus.value + minus.value)
    err = 0.5 * abs(plus.value - minus.value) + max(plus.abs_err, minus.abs_err)
    return EvalResult(value, err, plus.count + minus.count, Method.EPSILON_SPLIT)


def _relerr(res: EvalResult) -> float:
    return res.abs_err / max(abs(res.value), 1e-300)


def eval_ghat(spec: GHatSpec, t: float, *, tc: float | None = None,
              route: str = "auto") -> EvalResult:
    """Ghat_n(t)/Gamma(a) for 0 < t <= 1.

    ``tc`` may carry 1 - t computed without cancellation (quadrature nodes).
    ``route`` forces "integer", "origin", "unity" or "split" for cross-checks.
    """
    a, b, n = spec.a, spec.b, spec.n
    t = float(t)
    if not (0.0 < t <= 1.0):
        raise DomainError(f"eval_ghat needs 0 < t <= 1, got {t}")
    if route == "origin":
        return origin_series(a, b, n, t)
    if route == "unity":
        return unity_route(a, b, n, t, tc)
    if route == "split":
        return epsilon_split(a, b, n, t)
    if route == "integer" or _integer_components(a):
        return _integer_route(a, b, n, t)
    if route != "auto":
        raise ValueError(f"unknown route {route!r}")
    if t == 1.0 and not tc:
        if n == 0:
            raise DomainError("Ghat_0 = G_0 has no value at t = 1")
        lim = unity_limit(spec)
        if isinstance(lim, Finite):
            return EvalResult(lim.value, lim.abs_err, 1, Method.UNITY_SERIES)
        raise DomainError("Ghat_n is singular at t = 1 for these parameters")
    dist = coincidence_distance(a)
    clean = dist >= GUARD_BAND
    if clean and t <= 0.5:
        return origin_series(a, b, n, t)
    if t > 0.5:
        res = unity_route(a, b, n, t, tc)
        if clean and _relerr(res) > 1e-11:
            try:
                alt = origin_series(a, b, n, t)
            except MeijerError:
                return res
            if alt.abs_err < res.abs_err:
                return alt
        return res
    # coincident (or nearly coincident) a close to the origin
    try:
        res = unity_route(a, b, n, t, tc)
        if _relerr(res) <= 1e-11:
            return res
    except MeijerError:
        pass
    if dist > INTEGER_TOL:
        raise IllConditionedError(
            f"a_i - a_j within {dist:.3g} of an integer and t = {t} is too far from 1 "
            "for the expansion around 1")
    return epsilon_split(a, b, n, t)


# ---------------------------------------------------------- behavior at 1


@dataclass(frozen=True)
class Finite:
    value: complex
    abs_err: float = 0.0


@dataclass(frozen=True)
class PowerSingular:
    """Ghat_n/Gamma(a) ~ coefficient * (1-t)^exponent as t -> 1."""

    exponent: complex
    coefficient: complex


UnityLimit = Union[Finite, PowerSingular]


def unit_value(a, b, N: int) -> complex:
    """F(-N, a; b; 1)/Gamma(b), summed in extended precision."""
    return unit_table(a, b, N).total(N)


def unity_limit(spec: GHatSpec) -> UnityLimit:
    a, b, n = spec.a, spec.b, spec.n
    if n < 1:
        raise ValueError("unity_limit needs n >= 1")
    psi = spec.params.psi
    base = unit_value(_snap_integers(a), b, n - 1) / math.factorial(n - 1)
    err = 1e-15 * abs(base)
    if _integer_components(a):
        return Finite(base, err)
    m = spec.params.snapped_psi()
    if m is not None and m >= n - 1:
        q = q_polynomial(spec.params)
        corr = 0j
        for j in range(n):
            corr += (-1) ** j * q(j) / (math.factorial(n - 1 - j) * math.factorial(j))
        corr *= rgamma_vec(a)
        return Finite(base - corr, err + 1e-15 * abs(corr))
    if psi.real + n - 1 > 0:
        return Finite(base, err)
    sign = -1.0 if n % 2 else 1.0
    return PowerSingular(psi + n - 1, sign * rgamma_vec(a) * reciprocal_gamma(psi + n))


def connection_residual(spec: GHatSpec, x: float) -> float:
    """|Gtilde_n - (-1)^n Ghat_n - polynomial| with Ghat_n from the origin series.

    The two sides come from independent expansions (around 1 and around 0);
    the residual is reported without the Gamma(a) normalization when Gamma(a)
    is finite.
    """
    a, b, n = spec.a, spec.b, spec.n
    g = tilde_g(a, b, n, x)
    hat = origin_series(a, b, n, x)
    poly = _poly_term(a, b, n, x)
    sign = -1.0 if n % 2 else 1.0
    r = rgamma_vec(a)
    res = g.value * r - sign * hat.value - poly.value
    if _integer_components(a):
        return abs(res)
    return abs(res / r)


# ------------------------------------------------------------- at the origin


@dataclass(frozen=True)
class Normalization:
    a: tuple
    b: tuple
    removed: tuple  # 0-based indices of deleted a components
    pairs: tuple  # (a index, b index) for each cancellation
    ambiguous: bool = False


def normalize_params(params: ParamVectors) -> Normalization:
    """Delete every a_i whose gamma poles are all cancelled by some b_k = a_i + l, l <= 0.

    Each b_k cancels at most one a_i; a components are processed in ascending
    real part and take the first free b_k in index order.  ``ambiguous`` is
    set when some a_i had more than one candidate.
    """
    a, b = params.a, params.b
    used = set()
    removed = []
    pairs = []
    ambiguous = False
    for i in sorted(range(len(a)), key=lambda i: (a[i].real, i)):
        cands = []
        for k in range(len(b)):
            if k in used:
                continue
            l = nearest_integer(b[k] - a[i])
            if l is not None and l <= 0:
                cands.append(k)
        if cands:
            ambiguous = ambiguous or len(cands) > 1
            used.add(cands[0])
            removed.append(i)
            pairs.append((i, cands[0]))
    keep = tuple(x for i, x in enumerate(a) if i not in removed)
    return Normalization(keep, b, tuple(sorted(removed)), tuple(pairs), ambiguous)


@dataclass(frozen=True)
class SignInfo:
    leading_exponent: complex
    log_power: int
    leading_coeffs: tuple  # (exponent, coefficient) pairs
    eta: int | None
    integer_case: bool = False
    m: int | None = None
    normalization: Normalization | None = field(default=None, repr=False)


def _same(x, y):
    return abs(x - y) <= INTEGER_TOL * max(1.0, abs(x))


def _leading(spec: GHatSpec) -> SignInfo:
    a, b, n = spec.a, spec.b, spec.n
    if _integer_components(a):
        if n == 0:
            raise DomainError("Ghat_0/Gamma(a) vanishes identically when a has a pole of Gamma")
        sa = _snap_integers(a)
        best = None
        for j in range(n):
            c = (pochhammer(1 - n, j) * pochhammer_vec(sa, j) * rgamma_vec([x + j for x in b])
                 / (math.factorial(j) * math.factorial(n - 1)))
            if c != 0:
                best = (j, c)
        if best is None:
            raise DomainError("Ghat_n/Gamma(a) vanishes identically")
        j, c = best
        e = complex(n - 1 - j)
        return SignInfo(e, 0, ((e, c),), None, True, j)
    norm = normalize_params(spec.params)
    if not norm.a:
        raise DomainError("no normal component: every a_i is cancelled by some b_k")
    amin = min(x.real for x in norm.a)
    pool = [x for x in norm.a if abs(x.real - amin) <= INTEGER_TOL]
    groups = []
    for x in pool:
        for g in groups:
            if _same(g[0], x):
                g.append(x)
                break
        else:
            groups.append([x])
    r = max(len(g) for g in groups)
    hats = [g[0] for g in groups if len(g) == r]
    paired_b = {k for _, k in norm.pairs}
    free_b = [x for k, x in enumerate(b) if k not in paired_b]
    ra = rgamma_vec(a)
    coeffs = []
    for ah in hats:
        num = 1.0 + 0j
        for x in norm.a:
            if not _same(x, ah):
                num *= gamma_vec([x - ah])
        for i, k in norm.pairs:
            num *= pochhammer(b[k] - ah, int(round((a[i] - b[k]).real)))
        alpha = (num * ra * rgamma_vec([x - ah for x in free_b])
                 / (math.factorial(r - 1) * pochhammer(ah, n)))
        coeffs.append((ah + n - 1, alpha))
    return SignInfo(hats[0] + n - 1, r - 1, tuple(coeffs), None, False, None, norm)


def origin_sign_info(spec: GHatSpec) -> SignInfo:
    """Leading behavior of Ghat_n/Gamma(a) as t -> 0+, with the sign parity eta."""
    if not spec.params.is_real:
        raise DomainError("the sign parity eta is defined for real parameters only")
    info = _leading(spec)
    c = info.leading_coeffs[0][1].real
    if c == 0:
        raise DomainError("leading coefficient vanishes")
    eta = 0 if c > 0 else 1
    return SignInfo(info.leading_exponent, info.log_power, info.leading_coeffs, eta,
                    info.integer_case, info.m, info.normalization)


def leading_term(spec: GHatSpec, x: float) -> complex:
    """Sum of alpha_k x^{e_k} log(1/x)^{r-1} (the t -> 0 approximation)."""
    info = _leading(spec)
    lg = math.log(1.0 / x) ** info.log_power
    return sum(c * _cpow(x, e) for e, c in info.leading_coeffs) * lg


def eta_of(spec: GHatSpec) -> int:
    return origin_sign_info(spec).eta


def check_admissible(spec: GHatSpec):
    if not spec.admissible():
        raise AdmissibilityError(
            f"need n > -min(a_min, Re psi); got n = {spec.n}, a_min = {spec.params.a_min}, "
            f"Re psi = {spec.params.psi.real}")


__all__ = [
    "GHatSpec", "eval_ghat", "origin_series", "unity_route", "epsilon_split", "tilde_g",
    "unity_limit", "Finite", "PowerSingular", "connection_residual", "normalize_params",
    "Normalization", "SignInfo", "origin_sign_info", "leading_term", "unit_value",
    "check_admissible", "DegenerateParametersError",
]
