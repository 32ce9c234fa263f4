"""Regularized integrals of the Meijer-Norlund function against test functions.

g1_action is the finite-part regularization of

    Gamma(b)/Gamma(a) * int_0^1 G_0(t) phi(t) dt

obtained by Taylor-expanding phi at t = 1 to order n and moving the
remainder onto Ghat_n; gb1_action is the analogous construction for
int_0^1 G^{p,0}_{p,p}(u^2 | b-1/2; a-1/2) phi(u) du.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .core import EvalResult, Method, ParamVectors, as_complex_tuple, nearest_integer
from .errors import AdmissibilityError, DomainError
from .gamma import gamma_vec, rgamma_vec
from .ghat import GHatSpec, eval_ghat, eta_of
from .hypergeom import pfq, unit_table
from .moments import KernelSpec
from .norlund import eval_g0
from .quadrature import integrate01

DEFAULT_QUAD_TOL = 1e-11


class SmoothFunction:
    """phi with derivatives: ``f(t, k)`` returns phi^{(k)}(t) for k <= max_order.

    On construction the derivatives are compared against central differences
    of the next lower order at five fixed points.
    """

    def __init__(self, f: Callable[[float, int], complex], max_order: int, check: bool = True):
        self.f = f
        self.max_order = max_order
        if check:
            self._spot_check()

    def __call__(self, t: float, k: int = 0) -> complex:
        if k > self.max_order:
            raise ValueError(f"derivative order {k} exceeds max_order {self.max_order}")
        return complex(self.f(t, k))

    def _spot_check(self):
        rng = random.Random(20240611)
        h = 1e-5
        for _ in range(5):
            t = rng.uniform(0.1, 0.9)
            for k in range(1, min(self.max_order, 4) + 1):
                fk = self(t, k)
                fd = (self(t + h, k - 1) - self(t - h, k - 1)) / (2 * h)
                scale = max(1.0, abs(fk), abs(self(t, k - 1)))
                if abs(fd - fk) > 1e-5 * scale:
                    raise ValueError(
                        f"derivative of order {k} disagrees with finite differences at t={t:.4f}")

    @classmethod
    def constant(cls, c=1.0, max_order: int = 32):
        c = complex(c)
        return cls(lambda t, k: c if k == 0 else 0j, max_order)

    @classmethod
    def exponential(cls, z, max_order: int = 32):
        """exp(z t)."""
        z = complex(z)
        return cls(lambda t, k: z ** k * cmath.exp(z * t), max_order)

    @classmethod
    def cosine(cls, z, phase: float = 0.0, max_order: int = 32):
        """cos(z t + phase)."""
        z = float(z)
        return cls(lambda t, k: z ** k * math.cos(z * t + phase + 0.5 * math.pi * k), max_order)

    @classmethod
    def polynomial(cls, coeffs, max_order: int = 32):
        coeffs = as_complex_tuple(coeffs)

        def f(t, k):
            out = 0j
            for i in range(len(coeffs) - 1, k - 1, -1):
                out = out * t + coeffs[i] * math.perm(i, k)
            return out

        return cls(f, max_order)

    def scaled(self, alpha) -> "SmoothFunction":
        alpha = complex(alpha)
        return SmoothFunction(lambda t, k: alpha * self(t, k), self.max_order, check=False)

    def __add__(self, other: "SmoothFunction") -> "SmoothFunction":
        return SmoothFunction(lambda t, k: self(t, k) + other(t, k),
                              min(self.max_order, other.max_order), check=False)


def auto_n(params: ParamVectors) -> int:
    """Smallest comfortable regularization order: max(0, ceil(-a_min)+1, ceil(-Re psi)+1)."""
    return max(0, math.ceil(-params.a_min) + 1, math.ceil(-params.psi.real) + 1)


def _check(params: ParamVectors, n: int):
    for x in params.b:
        k = nearest_integer(x)
        if k is not None and k <= 0:
            raise AdmissibilityError(f"b component {x} is a nonpositive integer")
    if not n > -min(params.a_min, params.psi.real):
        raise AdmissibilityError(
            f"n = {n} must exceed -min(a_min, Re psi) = {-min(params.a_min, params.psi.real)}")


@lru_cache(maxsize=200000)
def _ghat_node(spec: GHatSpec, t: float, tc: float) -> complex:
    return eval_ghat(spec, t, tc=tc).value


def unit_coefficients(params: ParamVectors, n: int) -> list:
    """F(a, -k; b; 1) for k < n."""
    if n == 0:
        return []
    tab = unit_table(params.a, params.b, n)
    g = gamma_vec(params.b)
    return [tab.total(k) * g for k in range(n)]


def g1_action(params: ParamVectors, phi: SmoothFunction, n: int | None = None,
              tol: float = DEFAULT_QUAD_TOL) -> EvalResult:
    n = auto_n(params) if n is None else n
    _check(params, n)
    if phi.max_order < n:
        raise ValueError(f"test function supplies {phi.max_order} derivatives, need {n}")
    finite = 0j
    for k, fk in enumerate(unit_coefficients(params, n)):
        finite += (-1) ** k * phi(1.0, k) / math.factorial(k) * fk
    spec = GHatSpec(params, n)
    gb = gamma_vec(params.b)

    def f(t, tc):
        return _ghat_node(spec, t, tc) * phi(t, n)

    res = integrate01(f, tol, pair=True)
    sign = -1.0 if n % 2 else 1.0
    value = finite + sign * gb * res.value
    return EvalResult(value, abs(gb) * res.abs_err + 1e-15 * abs(finite), res.count,
                      Method.QUADRATURE)


def g1_kernel(params: ParamVectors, kernel: KernelSpec, n: int | None = None,
              tol: float = DEFAULT_QUAD_TOL) -> EvalResult:
    """g1_action applied to the kernel F(c; d; -z t)."""
    kernel.check_branch()
    n = auto_n(params) if n is None else n
    return g1_action(params, kernel.as_function(max(n, 1)), n, tol)


@dataclass(frozen=True)
class DecompositionReport:
    residual: float
    lhs: complex
    finite_part: complex
    measure_part: complex
    eta: int
    min_density: float
    violations: tuple  # (t, density) pairs below -1e-12

    @property
    def positive(self) -> bool:
        return not self.violations


def decomposition_check(params: ParamVectors, kernel: KernelSpec, n: int,
                        grid: int = 200, tol: float = DEFAULT_QUAD_TOL) -> DecompositionReport:
    """Split F(a, c; b, d; -z)/Gamma(b) into a finite sum plus an integral against
    the measure mu_n = (-1)^eta Ghat_n/Gamma(a) dt, and report the residual and
    any negative density values on a grid."""
    if not params.is_real:
        raise DomainError("decomposition needs real parameters")
    _check(params, n)
    eta = eta_of(GHatSpec(params, n))
    sgn_eta = -1.0 if eta else 1.0
    spec = GHatSpec(params, n)
    rb = rgamma_vec(params.b)
    lhs = pfq(params.a + kernel.c, params.b + kernel.d, -kernel.z).value * rb
    finite = 0j
    for k, fk in enumerate(unit_coefficients(params, n)):
        finite += (-1) ** k * kernel.derivative(1.0, k) / math.factorial(k) * fk
    finite *= rb
    sign_n = -1.0 if n % 2 else 1.0

    def f(t, tc):
        return sgn_eta * _ghat_node(spec, t, tc) * sign_n * kernel.derivative(t, n)

    measure = integrate01(f, tol, pair=True).value
    residual = abs(lhs - finite - sgn_eta * measure)
    violations = []
    lo = math.inf
    for i in range(1, grid + 1):
        t = i / (grid + 1)
        dens = (sgn_eta * eval_ghat(spec, t).value).real
        lo = min(lo, dens)
        if dens < -1e-12:
            violations.append((t, dens))
    return DecompositionReport(residual, lhs, finite, sgn_eta * measure, eta, lo,
                               tuple(violations))


# --------------------------------------------------------- the u^2 variant


def _half_shift(params: ParamVectors, delta: float) -> ParamVectors:
    return ParamVectors([x + delta for x in params.a], [x + delta for x in params.b])


def _g0(params: ParamVectors, x: float, xc: float) -> complex:
    return eval_g0(params, x, tc=xc).value


def square_density(params: ParamVectors, u: float, uc: float | None = None) -> complex:
    """G^{p,0}_{p,p}(u^2 | b-1/2; a-1/2)."""
    if uc is None:
        uc = 1.0 - u
    if u * u == 0.0:
        return 0j
    return _g0(_half_shift(params, 0.5), u * u, uc * (1.0 + u))


def bracket(params: ParamVectors, k: int) -> complex:
    """int_0^1 G(u^2 | b-1/2; a-1/2) (1-u)^k du through two terminating series at 1."""
    a, b = params.a, params.b
    r1 = gamma_vec(a) * rgamma_vec(b) / 2
    f1 = pfq((-k / 2, -k / 2 + 0.5) + a, (0.5,) + b, 1.0).value
    out = r1 * f1
    if k:
        ah = tuple(x + 0.5 for x in a)
        bh = tuple(x + 0.5 for x in b)
        r2 = k * gamma_vec(ah) * rgamma_vec(bh) / 2
        f2 = pfq((-k / 2 + 1, -k / 2 + 0.5) + ah, (1.5,) + bh, 1.0).value
        out -= r2 * f2
    return out


def kernel_kn(params: ParamVectors, n: int, t: float, tc: float | None = None) -> complex:
    """K_n(t) = int_0^t G(u^2 | b-1/2; a-1/2) (t-u)^{n-1} du (n >= 1).

    Expanding (t-u)^{n-1} binomially turns each piece into a first primitive
    of a Meijer-Norlund function at t^2 with half-integer shifted parameters,
    which also continues K_n analytically to a_min <= 0.
    """
    if tc is None:
        tc = 1.0 - t
    if t * t == 0.0:
        return 0j
    t2c = tc * (1.0 + t)
    out = 0j
    for i in range(n):
        shifted = _half_shift(params, i / 2)
        g1 = _ghat_node(GHatSpec(shifted, 1), t * t, t2c)
        out += math.comb(n - 1, i) * (-1) ** i * t ** (n - 1 - i) * gamma_vec(shifted.a) * g1
    return out / 2


def kernel_kn_quad(params: ParamVectors, n: int, t: float, tol: float = 1e-12) -> complex:
    """K_n(t) by direct quadrature (needs a_min > 0)."""
    if not params.a_min > 0:
        raise DomainError("direct quadrature of K_n needs a_min > 0")
    if t < 1e-140:
        # (t v)^2 underflows over most of the range; K_n(t) = O(t^n) is negligible
        return 0j
    shifted = _half_shift(params, 0.5)
    tc = 1.0 - t

    def f(v, vc):
        x = (t * v) ** 2
        if x == 0.0:
            return 0.0
        return _g0(shifted, x, (tc + t * vc) * (1.0 + t * v)) * vc ** (n - 1)

    return t ** n * integrate01(f, tol, pair=True).value


def gb1_action(params: ParamVectors, phi: SmoothFunction, n: int | None = None,
               tol: float = DEFAULT_QUAD_TOL, kernel_route: str = "primitive") -> EvalResult:
    """Regularized int_0^1 G(u^2 | b-1/2; a-1/2) phi(u) du.

    kernel_route="quadrature" evaluates K_n by nested quadrature instead of
    the closed binomial form (slow; a_min > 0 only).
    """
    n = auto_n(params) if n is None else n
    _check(params, n)
    if phi.max_order < n:
        raise ValueError(f"test function supplies {phi.max_order} derivatives, need {n}")
    finite = 0j
    for k in range(n):
        finite += phi(1.0, k) / ((-1) ** k * math.factorial(k)) * bracket(params, k)
    if n == 0:
        res = integrate01(lambda u, uc: square_density(params, u, uc) * phi(u, 0), tol, pair=True)
        return EvalResult(res.value, res.abs_err, res.count, Method.QUADRATURE)
    if kernel_route == "quadrature":
        def f(t, tc):
            return kernel_kn_quad(params, n, t) * phi(t, n)
    else:
        def f(t, tc):
            return kernel_kn(params, n, t, tc) * phi(t, n)
    res = integrate01(f, tol, pair=True)
    scale = (-1) ** n / math.factorial(n - 1)
    return EvalResult(finite + scale * res.value, abs(scale) * res.abs_err + 1e-15 * abs(finite),
                      res.count, Method.QUADRATURE)


def besselrep_series(a_hat, b, z: float, n: int = 1, tol: float = DEFAULT_QUAD_TOL) -> EvalResult:
    """F(a_hat; b; -z^2/4) rebuilt as a finite cosine sum plus an oscillatory integral.

    a = (a_hat, 1/2) is formed internally.
    """
    a_hat = as_complex_tuple(a_hat)
    b = as_complex_tuple(b)
    params = ParamVectors(a_hat + (0.5 + 0j,), b)
    if n < 1:
        raise ValueError("besselrep_series needs n >= 1")
    _check(params, n)
    z = float(z)
    a = params.a
    ratio = gamma_vec(b) * rgamma_vec(a)
    finite = 0j
    for k in range(n):
        f1 = pfq((-k / 2, -k / 2 + 0.5) + a, (0.5,) + b, 1.0).value
        br = f1
        if k:
            ah = tuple(x + 0.5 for x in a)
            bh = tuple(x + 0.5 for x in b)
            f2 = pfq((-k / 2 + 1, -k / 2 + 0.5) + ah, (1.5,) + bh, 1.0).value
            br -= k * gamma_vec(b) * gamma_vec(ah) * rgamma_vec(a) * rgamma_vec(bh) * f2
        finite += z ** k * math.cos(z + 0.5 * math.pi * k) / ((-1) ** k * math.factorial(k)) * br
    phase = 0.5 * math.pi * n
    if n == 1:
        spec = GHatSpec(params, 1)

        def f(t, tc):
            if t * t == 0.0:
                return 0.0
            return _ghat_node(spec, t * t, tc * (1.0 + t)) * math.sin(z * t)

        res = integrate01(f, tol, pair=True)
        scale = z * gamma_vec(b)
    else:
        def f(t, tc):
            return kernel_kn(params, n, t, tc) * math.cos(z * t + phase)

        res = integrate01(f, tol, pair=True)
        scale = (-z) ** n * 2 * ratio / math.factorial(n - 1)
    value = finite + scale * res.value
    return EvalResult(value, abs(scale) * res.abs_err + 1e-15 * abs(finite), res.count,
                      Method.QUADRATURE)
