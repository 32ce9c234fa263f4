"""Meijer-Norlund functions G^{p,0}_{p,p}, their fractional primitives and
regularized integrals, moments, transforms and sign/zero checks."""

from .core import EvalResult, Method, ParamVectors, params
from .errors import (
    AdmissibilityError,
    BranchCutError,
    DegenerateParametersError,
    DivergenceError,
    DomainError,
    IllConditionedError,
    MeijerError,
    NonConvergenceError,
    PoleError,
)
from .functionals import (
    SmoothFunction,
    besselrep_series,
    decomposition_check,
    g1_action,
    g1_kernel,
    gb1_action,
)
from .gamma import gamma, loggamma, pochhammer, rgamma
from .ghat import GHatSpec, eval_ghat, normalize_params, origin_sign_info, unity_limit
from .hypergeom import pfq, pfq_derivative
from .kernels import BACKEND
from .moments import KernelSpec, hyper_transform, mixed_moment, moment_mk_alt, summation_series
from .norlund import eval_g0, mellin_rhs, norlund_coeffs, q_polynomial
from .positivity import (
    find_cos_zeros,
    monotonicity_check,
    p_alpha_member,
    positivity_scan_1f2,
    stabilization_N,
    supermajorization,
    v_min,
)
from .quadrature import integrate01

__version__ = "0.1.0"
