"""Complex gamma function, its reciprocal, and Pochhammer symbols.

Gamma uses a 14-term Lanczos sum (g = 671/128) with the exponent carried in
double-double, plus the reflection formula for Re z < 1/2.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable

from .core import as_complex
from .errors import PoleError
from .kernels import lanczos_gamma


def _pole_index(z: complex) -> int | None:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return int(z.real)
    return None


def sinpi(z: complex) -> complex:
    """sin(pi z) with the real part reduced first, so integers give exact zeros."""
    x, y = z.real, z.imag
    n = round(x)
    f = x - n
    sign = -1.0 if n % 2 else 1.0
    s = sign * math.sin(math.pi * f)
    c = sign * math.cos(math.pi * f)
    if y == 0.0:
        return complex(s, 0.0)
    return complex(s * math.cosh(math.pi * y), c * math.sinh(math.pi * y))


def gamma(z) -> complex:
    z = as_complex(z)
    if _pole_index(z) is not None:
        raise PoleError(f"gamma has a pole at {z}", z)
    if z.real < 0.5:
        return math.pi / (sinpi(z) * lanczos_gamma(1.0 - z))
    return lanczos_gamma(z)


def reciprocal_gamma(z) -> complex:
    """1/Gamma(z); entire, exactly 0 at the nonpositive integers."""
    z = as_complex(z)
    if _pole_index(z) is not None:
        return 0j
    if z.real < 0.5:
        return sinpi(z) * lanczos_gamma(1.0 - z) / math.pi
    return 1.0 / lanczos_gamma(z)


rgamma = reciprocal_gamma


def loggamma(z) -> complex:
    """A logarithm of Gamma(z) (principal log of the value; not the analytic branch)."""
    return cmath.log(gamma(z))


def pochhammer(z, n: int) -> complex:
    """(z)_n by direct product, so (z)_n is exactly 0 whenever -z is an integer < n."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    z = as_complex(z)
    out = 1.0 + 0j
    for i in range(n):
        out *= z + i
    return out


def gamma_vec(v: Iterable) -> complex:
    out = 1.0 + 0j
    for i, x in enumerate(v):
        x = as_complex(x)
        if _pole_index(x) is not None:
            raise PoleError(f"component {i} of the vector is a gamma pole ({x})", x)
        out *= gamma(x)
    return out


def rgamma_vec(v: Iterable) -> complex:
    out = 1.0 + 0j
    for x in v:
        out *= reciprocal_gamma(x)
    return out


def pochhammer_vec(v: Iterable, n: int) -> complex:
    out = 1.0 + 0j
    for x in v:
        out *= pochhammer(x, n)
    return out
