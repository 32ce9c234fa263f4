"""Moments of Ghat_n and its hypergeometric-kernel transforms.

Every value here is divided by Gamma(a), like eval_ghat.  The building block
is R(N) = F(-N, a; b; 1)/Gamma(b), a terminating alternating sum computed in
extended precision (see hypergeom.UnitSums).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath

from .core import EvalResult, Method, as_complex, as_complex_tuple
from .errors import AdmissibilityError, BranchCutError, DomainError, NonConvergenceError
from .gamma import pochhammer, pochhammer_vec, rgamma_vec
from .ghat import GHatSpec, check_admissible
from .hypergeom import EPS, pfq, unit_table

MAX_J = 4000


def _table(spec: GHatSpec, top: int):
    return unit_table(spec.a, spec.b, top)


def mixed_moment(spec: GHatSpec, k: int, r: int) -> complex:
    """int_0^1 Ghat_n(t) t^k (1-t)^r dt / Gamma(a), in closed form.

    (This is (-1)^r times the r-th forward difference of the power moments.)
    """
    if k < 0 or r < 0:
        raise ValueError("k and r must be nonnegative")
    check_admissible(spec)
    n = spec.n
    tab = _table(spec, n + r + k)
    with mpmath.workdps(tab.dps):
        s = mpmath.mpc(0)
        for j in range(k + 1):
            w = mpmath.binomial(k, j) * mpmath.factorial(r + j) / mpmath.factorial(n + r + j)
            term = w * tab.total_mp(n + r + j)
            s += -term if j % 2 else term
        return complex(s)


def moment_mk_alt(spec: GHatSpec, k: int) -> complex:
    """m_k / Gamma(a) from the two-part closed form (terminating series plus a ratio term)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    check_admissible(spec)
    n = spec.n
    tab = _table(spec, n + k)
    with mpmath.workdps(tab.dps):
        first = mpmath.mpc(0)
        if n > 0:
            for i in range(n):
                w = (mpmath.rf(1 - n, i) / mpmath.factorial(i)
                     * mpmath.mpf(-n - k) / (-n - k + i))
                first += w * tab.c(i)
            first /= (n + k) * mpmath.factorial(n - 1)
        second = tab.c(n + k) * mpmath.factorial(k) / mpmath.factorial(n + k)
        if n % 2:
            second = -second
        return complex(first + second)


@dataclass(frozen=True)
class KernelSpec:
    """A kernel F(c; d; -z t) with closed forms for the named special cases.

    kind is one of "stieltjes" ((1 + z t)^-sigma), "laplace" (exp(-z t)),
    "bessel" (0F1(; nu; -z t)) or "hypergeom" (general c, d).
    """

    kind: str
    z: complex
    c: tuple = ()
    d: tuple = ()
    sigma: complex = 0j
    nu: complex = 0j

    @classmethod
    def stieltjes(cls, sigma, z):
        sigma = as_complex(sigma)
        return cls("stieltjes", as_complex(z), (sigma,), (), sigma=sigma)

    @classmethod
    def laplace(cls, z):
        return cls("laplace", as_complex(z))

    @classmethod
    def bessel(cls, nu, z):
        nu = as_complex(nu)
        return cls("bessel", as_complex(z), (), (nu,), nu=nu)

    @classmethod
    def hypergeom(cls, c, d, z):
        return cls("hypergeom", as_complex(z), as_complex_tuple(c), as_complex_tuple(d))

    @property
    def unit_disk_type(self) -> bool:
        return len(self.c) == len(self.d) + 1

    def check_series_domain(self):
        z = self.z
        if self.unit_disk_type:
            if not z.real > -0.5:
                raise DomainError("the transform series needs Re z > -1/2 for this kernel")
            if self.d and not abs(z) <= 1:
                raise DomainError("kernels of type u = s+1 >= 2 are summed only for |z| <= 1")
        elif len(self.c) > len(self.d) + 1:
            raise DomainError("kernel needs u <= s+1")

    def check_branch(self):
        z = self.z
        if self.unit_disk_type and z.imag == 0 and z.real <= -1:
            raise BranchCutError(f"z = {z} lies on the cut (-inf, -1]")

    def inner(self, j: int) -> complex:
        """F(c+j; d+j; -z)."""
        z = self.z
        if len(self.c) == 1 and not self.d:
            return (1 + z) ** (-self.c[0] - j)
        if not self.c and not self.d:
            return cmath.exp(-z)
        return pfq([x + j for x in self.c], [x + j for x in self.d], -z).value

    def value(self, t: float) -> complex:
        return self.derivative(t, 0)

    def derivative(self, t: float, k: int) -> complex:
        """d^k/dt^k of F(c; d; -z t)."""
        z = self.z
        if self.kind == "stieltjes":
            return (-z) ** k * pochhammer(self.sigma, k) * (1 + z * t) ** (-self.sigma - k)
        if self.kind == "laplace":
            return (-z) ** k * cmath.exp(-z * t)
        f = pfq([x + k for x in self.c], [x + k for x in self.d], -z * t).value
        return (-z) ** k * pochhammer_vec(self.c, k) / pochhammer_vec(self.d, k) * f

    def as_function(self, max_order: int = 12):
        from .functionals import SmoothFunction

        return SmoothFunction(lambda t, k: self.derivative(t, k), max_order, check=False)


def hyper_transform(spec: GHatSpec, kernel: KernelSpec, tol: float = 1e-15) -> EvalResult:
    """int_0^1 F(c; d; -z t) Ghat_n(t) dt / Gamma(a), summed as a series in j."""
    check_admissible(spec)
    kernel.check_series_domain()
    n = spec.n
    z = kernel.z
    total = 0j
    sabs = 0.0
    small = 0
    dropped = 0.0
    tab = _table(spec, n + 64)
    coef = 1.0 + 0j  # z^j (c)_j / ((n+j)! (d)_j)
    coef /= math.factorial(n)
    for j in range(MAX_J):
        if n + j > tab.n_max:
            tab = _table(spec, 2 * tab.n_max)
        term = coef * kernel.inner(j) * tab.total(n + j)
        mag = abs(term)
        if j >= 5 + abs(z) and mag <= tol * abs(total):
            small += 1
            if small == 3:
                dropped = mag
                break
        else:
            small = 0
        total += term
        sabs += mag
        for x in kernel.c:
            coef *= x + j
        for x in kernel.d:
            coef /= x + j
        coef *= z / (n + j + 1)
    else:
        raise NonConvergenceError("transform series did not converge", partial=total)
    err = 10 * dropped + 8 * EPS * sabs
    return EvalResult(total, err, j + 1, Method.POWER_SERIES)


def summation_series(a, b, c, d, z, tol: float = 1e-16) -> EvalResult:
    """sum_j (c)_j z^j/((d)_j j!) F(c+j; d+j; -z) F(-j, a; b; 1).

    Equals F(a, c; b, d; -z) where both converge.
    """
    a = as_complex_tuple(a)
    b = as_complex_tuple(b)
    kernel = KernelSpec.hypergeom(c, d, z)
    if len(kernel.c) > len(kernel.d) + 1:
        raise DomainError("need u <= s+1")
    kernel.check_series_domain()
    scale = rgamma_vec(b)
    if scale == 0:
        raise AdmissibilityError("b contains a pole of Gamma")
    z = kernel.z
    tab = unit_table(a, b, 64)
    total = 0j
    sabs = 0.0
    small = 0
    dropped = 0.0
    coef = 1.0 + 0j
    for j in range(MAX_J):
        if j > tab.n_max:
            tab = unit_table(a, b, 2 * tab.n_max)
        term = coef * kernel.inner(j) * tab.total(j) / scale
        mag = abs(term)
        if j >= 5 + abs(z) and mag <= tol * abs(total):
            small += 1
            if small == 3:
                dropped = mag
                break
        else:
            small = 0
        total += term
        sabs += mag
        for x in kernel.c:
            coef *= x + j
        for x in kernel.d:
            coef /= x + j
        coef *= z / (j + 1)
    else:
        raise NonConvergenceError("summation series did not converge", partial=total)
    return EvalResult(total, 10 * dropped + 8 * EPS * sabs, j + 1, Method.POWER_SERIES)
