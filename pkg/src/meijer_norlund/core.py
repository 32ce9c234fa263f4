"""Shared value types: parameter vectors and evaluation results."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import DomainError

# Distance below which a quantity counts as an integer (psi snapping,
# integer coincidences between parameters).
INTEGER_TOL = 1e-10


class Method(str, Enum):
    TERMINATING = "Terminating"
    POWER_SERIES = "PowerSeries"
    UNITY_SERIES = "UnitySeries"
    ORIGIN_SERIES = "OriginSeries"
    QUADRATURE = "Quadrature"
    EPSILON_SPLIT = "EpsilonSplit"


@dataclass(frozen=True)
class EvalResult:
    value: complex
    abs_err: float
    count: int
    method: Method

    def __post_init__(self):
        if not (self.abs_err >= 0.0):
            raise ValueError(f"abs_err must be nonnegative, got {self.abs_err}")

    @property
    def real(self) -> float:
        return self.value.real

    def as_dict(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "abs_err": self.abs_err,
            "method": self.method.value,
            "count": self.count,
        }


def as_complex(z) -> complex:
    """Convert to a finite Python complex; NaN and infinities are rejected."""
    w = complex(z)
    if not (cmath.isfinite(w)):
        raise DomainError(f"non-finite value {z!r}")
    return w


def as_complex_tuple(values: Iterable) -> tuple[complex, ...]:
    return tuple(as_complex(v) for v in values)


def nearest_integer(z: complex, tol: float = INTEGER_TOL) -> int | None:
    """The integer within ``tol`` of z, or None."""
    if abs(z.imag) > tol:
        return None
    k = round(z.real)
    if abs(z.real - k) <= tol:
        return int(k)
    return None


def is_nonpositive_integer(z: complex, tol: float = 0.0) -> bool:
    k = nearest_integer(complex(z), tol)
    return k is not None and k <= 0


@dataclass(frozen=True)
class ParamVectors:
    """The parameter pair (a, b) of G^{p,0}_{p,p}(t | b-1; a-1).

    Every public function takes parameters in this convention and applies the
    unit shift itself.
    """

    a: tuple[complex, ...]
    b: tuple[complex, ...]

    def __init__(self, a: Sequence, b: Sequence):
        a = as_complex_tuple(a)
        b = as_complex_tuple(b)
        if len(a) == 0 or len(a) != len(b):
            raise DomainError(f"need len(a) == len(b) >= 1, got {len(a)} and {len(b)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def a_min(self) -> float:
        return min(x.real for x in self.a)

    @property
    def psi(self) -> complex:
        return sum(self.b) - sum(self.a)

    @property
    def is_real(self) -> bool:
        return all(x.imag == 0.0 for x in self.a + self.b)

    def snapped_psi(self) -> int | None:
        """m >= 0 when psi = -m up to INTEGER_TOL, else None."""
        k = nearest_integer(self.psi)
        if k is not None and k <= 0:
            return -k
        return None

    def shifted(self, delta) -> "ParamVectors":
        d = complex(delta)
        return ParamVectors([x + d for x in self.a], [x + d for x in self.b])

    def __repr__(self) -> str:
        return f"ParamVectors(a={_fmt(self.a)}, b={_fmt(self.b)})"


def _fmt(v):
    out = []
    for x in v:
        out.append(repr(x.real) if x.imag == 0 else repr(x))
    return "(" + ", ".join(out) + ")"


def params(a, b) -> ParamVectors:
    """Convenience constructor accepting scalars or sequences."""
    if not isinstance(a, (list, tuple)):
        a = [a]
    if not isinstance(b, (list, tuple)):
        b = [b]
    return ParamVectors(a, b)
