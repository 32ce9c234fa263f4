"""Sign and zero results: v-function, supermajorization, sign stabilization,
monotone fractional integrals, zeros of p-1Fp(-z^2/4) - cos z and a
positivity scan for pFp+1.

Everything here is a numeric certificate on a finite grid, never a proof.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .core import ParamVectors
from .errors import DomainError, NonConvergenceError
from .gamma import rgamma
from .ghat import GHatSpec, eta_of, eval_ghat
from .hypergeom import pfq, pfq_derivative
from .norlund import eval_g0
from .quadrature import integrate01

STABILIZATION_CAP = 64


class OutOfTheoremWarning(UserWarning):
    pass


def _real_list(v):
    out = []
    for x in v:
        x = complex(x)
        if x.imag != 0:
            raise DomainError("real parameters required")
        out.append(x.real)
    return out


def _v(a, b, t):
    return sum(t ** x for x in a) - sum(t ** y for y in b)


def v_min(params: ParamVectors, grid: int = 2000) -> tuple[float, float]:
    """min over [0, 1] of v(t) = sum t^a_j - t^b_j, by grid plus ternary refinement."""
    a = _real_list(params.a)
    b = _real_list(params.b)
    if min(a) <= 0:
        raise DomainError("v_min needs a > 0")
    ts = [i / (grid - 1) for i in range(grid)]
    vals = [_v(a, b, t) for t in ts]
    i = min(range(grid), key=vals.__getitem__)
    best, arg = vals[i], ts[i]
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, grid - 1)]
    for _ in range(100):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if _v(a, b, m1) < _v(a, b, m2):
            hi = m2
        else:
            lo = m1
    t = 0.5 * (lo + hi)
    v = _v(a, b, t)
    if v < best:
        best, arg = v, t
    return best, arg


def supermajorization(a, b) -> bool:
    """Weak supermajorization: ascending prefix sums of a never exceed those of b."""
    a = sorted(_real_list(a))
    b = sorted(_real_list(b))
    if len(a) != len(b):
        raise ValueError("a and b must have equal length")
    sa = sb = 0.0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb + 1e-14 * max(1.0, abs(sb)):
            return False
    return True


def p_alpha_member(alpha: float, beta1: float, beta2: float) -> bool:
    if min(alpha, beta1, beta2) <= 0:
        raise DomainError("p_alpha_member needs positive inputs")
    lo = min(2 * alpha, alpha + 0.5)
    hi = max(2 * alpha, alpha + 0.5)
    return beta1 >= lo and beta2 >= lo and beta1 + beta2 >= lo + hi


# ------------------------------------------------------------ stabilization


def _n_min(params: ParamVectors) -> int:
    return max(0, math.floor(-min(params.a_min, params.psi.real)) + 1)


def signed_min(params: ParamVectors, n: int, grid: int = 200) -> float:
    """min over the grid of (-1)^eta Ghat_n/Gamma(a) measured in units of its error estimate.

    A value above 1 means every grid value is positive beyond its error bar.
    """
    spec = GHatSpec(params, n)
    s = -1.0 if eta_of(spec) else 1.0
    worst = math.inf
    for i in range(1, grid + 1):
        t = i / (grid + 1)
        r = eval_ghat(spec, t)
        v = s * r.value.real
        floor = max(r.abs_err, 1e-13 * abs(r.value))
        worst = min(worst, v / floor if floor > 0 else (math.inf if v > 0 else -math.inf))
    return worst


def _positive(params, n, grid):
    return signed_min(params, n, grid) > 1.0


def stabilization_N(params: ParamVectors, grid: int = 200) -> int:
    """Smallest n with (-1)^eta Ghat_n > 0 on the grid for n, n+1 and n+2 (heuristic)."""
    if not params.is_real:
        raise DomainError("stabilization_N needs real parameters")
    n = _n_min(params)
    ok = {}
    while n <= STABILIZATION_CAP:
        for m in (n, n + 1, n + 2):
            if m not in ok:
                ok[m] = _positive(params, m, grid)
        if ok[n] and ok[n + 1] and ok[n + 2]:
            return n
        n += 1
    raise NonConvergenceError(f"no sign stabilization found up to n = {STABILIZATION_CAP}")


# ------------------------------------------------------------ fractional integral


@dataclass(frozen=True)
class MonotonicityReport:
    hypotheses_ok: bool
    failed: tuple
    positive: bool
    increasing: bool
    min_value: float
    min_slope: float
    grid: int


def _g0_at(params: ParamVectors, x: float, xc: float) -> float:
    return eval_g0(params, x, tc=xc).value.real


def fractional_integral(a, b, alpha: float, beta: float, x: float, tol: float = 1e-12) -> float:
    """x^alpha/Gamma(gamma) int_0^x (x-t)^(gamma-1) G^{p,0}(t | b-beta; a-beta) dt, gamma = beta-alpha."""
    inner = ParamVectors([y - beta + 1 for y in a], [y - beta + 1 for y in b])
    gam = beta - alpha
    xc = 1.0 - x

    def f(v, vc):
        s = x * v
        if s == 0.0:
            return 0.0
        return _g0_at(inner, s, xc + x * vc) * vc ** (gam - 1)

    res = integrate01(f, tol, pair=True)
    return (x ** (alpha + gam) * rgamma(gam) * res.value).real


def monotonicity_check(a, b, alpha: float, beta: float, grid: int = 100) -> MonotonicityReport:
    a = _real_list(a)
    b = _real_list(b)
    failed = []
    if alpha < 0:
        failed.append("alpha >= 0")
    if beta - alpha < 1:
        failed.append("beta - alpha >= 1")
    if not min(a) > beta - 1:
        failed.append("a > beta - 1")
    if min(a) > 0 and v_min(ParamVectors(a, b))[0] < -1e-12:
        failed.append("v >= 0")
    xs = [i / (grid + 1) for i in range(1, grid + 1)]
    vals = [fractional_integral(a, b, alpha, beta, x) for x in xs]
    slopes = [(vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i]) for i in range(grid - 1)]
    lo = min(vals)
    slope = min(slopes) if slopes else math.inf
    return MonotonicityReport(not failed, tuple(failed), lo > 0, slope >= -1e-12, lo, slope, grid)


# ------------------------------------------------------------ zeros


@dataclass(frozen=True)
class ZeroReport:
    interval: tuple
    root: float
    derivative_at_root: float
    simple: bool
    scan_extra_zeros: int
    in_theorem: bool = True


def cos_zero_hypotheses(a_hat, b) -> bool:
    a = _real_list(a_hat) + [0.5]
    b = _real_list(b)
    if len(a) != len(b) or min(a) <= 0:
        return False
    if supermajorization(a, b):
        return True
    return v_min(ParamVectors(a, b))[0] >= -1e-12


def _cos_gap(a_hat, b, z):
    return pfq(a_hat, b, -z * z / 4).value.real - math.cos(z)


def _cos_gap_prime(a_hat, b, z):
    return (pfq_derivative(a_hat, b, -z * z / 4, 1).value.real * (-z / 2) + math.sin(z))


def scan_zeros(a_hat, b, lo: float = 0.05, hi: float = 4 * math.pi,
               step: float = math.pi / 200, xtol: float = 1e-12) -> list:
    """All sign changes of f on [lo, hi], each refined by bisection."""
    roots = []
    n = int(math.ceil((hi - lo) / step))
    z0, f0 = lo, _cos_gap(a_hat, b, lo)
    for i in range(1, n + 1):
        z1 = min(lo + i * step, hi)
        f1 = _cos_gap(a_hat, b, z1)
        if f0 == 0.0:
            roots.append(z0)
        elif f0 * f1 < 0:
            x, y, fx = z0, z1, f0
            while y - x > xtol:
                m = 0.5 * (x + y)
                fm = _cos_gap(a_hat, b, m)
                if fm == 0.0:
                    x = y = m
                    break
                if (fm < 0) == (fx < 0):
                    x, fx = m, fm
                else:
                    y = m
            roots.append(0.5 * (x + y))
        z0, f0 = z1, f1
    return roots


def find_cos_zeros(a_hat, b, scan_hi: float = 4 * math.pi) -> list:
    """Zeros of p-1Fp(a_hat; b; -z^2/4) - cos z in (pi, 2pi) and (2pi, 3pi).

    Zeros found elsewhere in (0.05, scan_hi] are counted in scan_extra_zeros.
    """
    ok = cos_zero_hypotheses(a_hat, b)
    if not ok:
        warnings.warn("theorem hypotheses fail for these parameters; report is out-of-theorem",
                      OutOfTheoremWarning, stacklevel=2)
    roots = scan_zeros(a_hat, b, hi=scan_hi)
    windows = [(math.pi, 2 * math.pi), (2 * math.pi, 3 * math.pi)]
    inside = [(w, r) for r in roots for w in windows if w[0] < r < w[1]]
    extra = len(roots) - len(inside)
    out = []
    for w, r in inside:
        d = _cos_gap_prime(a_hat, b, r)
        out.append(ZeroReport(w, r, d, abs(d) > 1e-8, extra, ok))
    return out


# ------------------------------------------------------------ pFp+1 positivity


@dataclass(frozen=True)
class PositivityScan:
    min_value: float
    argmin: float
    in_theorem: bool
    points: int


def positivity_scan_1f2(alpha, beta1, beta2, a=(), b=(), x_grid=None) -> PositivityScan:
    a = _real_list(a)
    b = _real_list(b)
    ok = p_alpha_member(alpha, beta1, beta2)
    if a:
        ok = ok and min(a) > 0 and v_min(ParamVectors(a, b))[0] >= -1e-12
    if x_grid is None:
        x_grid = [-400 + 450 * i / 499 for i in range(500)]
    best, arg = math.inf, None
    for x in x_grid:
        v = pfq([alpha] + a, [beta1, beta2] + b, x).value.real
        if v < best:
            best, arg = v, x
    if not ok:
        warnings.warn("outside the certified parameter region", OutOfTheoremWarning, stacklevel=2)
    return PositivityScan(best, arg, ok, len(x_grid))
