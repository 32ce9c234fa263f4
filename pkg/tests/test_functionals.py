import cmath
import math

import mpmath as mp
import pytest

from meijer_norlund.core import ParamVectors
from meijer_norlund.errors import AdmissibilityError, BranchCutError
from meijer_norlund.functionals import (
    SmoothFunction,
    auto_n,
    besselrep_series,
    bracket,
    decomposition_check,
    g1_action,
    g1_kernel,
    gb1_action,
    kernel_kn,
    kernel_kn_quad,
)
from meijer_norlund.hypergeom import pfq
from meijer_norlund.moments import KernelSpec

ONE_MINUS_INV_E = 0.632120558828557678404476229839
SIN2_OVER_2 = 0.454648713412840847698009932956
# 2F1(2, -1/2; 1; -1/2), frozen from mpmath at 30 digits
STIELTJES_EXAMPLE = 1.42886901662352055728174904358

SINC = ParamVectors((1.0, 0.5), (1.0, 1.5))


def P(a, b):
    return ParamVectors(a, b)


class TestSmoothFunction:
    def test_bad_derivative_rejected(self):
        with pytest.raises(ValueError):
            SmoothFunction(lambda t, k: math.sin(t) if k == 0 else 2 * math.cos(t), 3)

    def test_order_limit(self):
        f = SmoothFunction.exponential(1.0, 2)
        with pytest.raises(ValueError):
            f(0.5, 3)

    def test_polynomial_derivatives(self):
        f = SmoothFunction.polynomial([1, 2, 3], 4)
        assert f(2.0, 0) == 17 and f(2.0, 1) == 14 and f(2.0, 2) == 6 and f(2.0, 3) == 0

    def test_add_and_scale(self):
        f = SmoothFunction.exponential(-1.0, 5) + SmoothFunction.cosine(2.0, max_order=5).scaled(3)
        t = 0.3
        assert abs(f(t, 2) - (math.exp(-t) - 12 * math.cos(2 * t))) < 1e-14


class TestG1:
    def test_constant(self):
        for a, b in [((1,), (2,)), ((-0.5,), (1,)), ((0.4, -1.3), (1.7, 0.8))]:
            params = P(a, b)
            assert abs(g1_action(params, SmoothFunction.constant(1.0, 8)).value - 1) < 1e-12

    def test_plain_integral(self):
        phi = SmoothFunction.exponential(0.7, 4)
        v = g1_action(P((1,), (2,)), phi, n=0).value
        assert abs(v - (math.exp(0.7) - 1) / 0.7) < 1e-12

    def test_n_independence(self):
        params = P((-0.6, 1.3), (0.9, 2.1))
        phi = SmoothFunction.cosine(2.0, 0.3, 10)
        n0 = auto_n(params)
        v0 = g1_action(params, phi, n0).value
        for n in (n0 + 1, n0 + 2):
            assert abs(g1_action(params, phi, n).value - v0) < 1e-8

    def test_linearity(self):
        params = P((0.3, -0.4), (1.2, 0.9))
        f = SmoothFunction.exponential(-1.0, 8)
        g = SmoothFunction.polynomial([0, 1, -2, 1], 8)
        lhs = g1_action(params, f + g.scaled(2.5)).value
        rhs = g1_action(params, f).value + 2.5 * g1_action(params, g).value
        assert abs(lhs - rhs) < 1e-10

    def test_inadmissible(self):
        with pytest.raises(AdmissibilityError):
            g1_action(P((-1.5,), (1,)), SmoothFunction.constant(1.0, 4), n=1)
        with pytest.raises(AdmissibilityError):
            g1_action(P((1,), (-2,)), SmoothFunction.constant(1.0, 4))
        with pytest.raises(ValueError):
            g1_action(P((-1.5,), (1,)), SmoothFunction.constant(1.0, 1), n=2)


class TestKernelAction:
    def test_z_zero(self):
        for k in (KernelSpec.laplace(0), KernelSpec.stieltjes(2, 0), KernelSpec.bessel(0.5, 0)):
            assert abs(g1_kernel(P((0.4, -0.3), (1.1, 2.0)), k).value - 1) < 1e-12

    def test_stieltjes_regularized(self):
        v = g1_kernel(P((-0.5,), (1,)), KernelSpec.stieltjes(2, 0.5)).value
        assert abs(v - STIELTJES_EXAMPLE) < 1e-9
        assert abs(pfq([2, -0.5], [1], -0.5).value - STIELTJES_EXAMPLE) < 1e-14

    def test_laplace(self):
        assert abs(g1_kernel(P((1,), (2,)), KernelSpec.laplace(1)).value - ONE_MINUS_INV_E) < 1e-12

    def test_analytic_continuation(self):
        # z = 2 is outside the unit disk: compare against mpmath's continued 2F1
        v = g1_kernel(P((0.6,), (1.7,)), KernelSpec.stieltjes(1.3, 2.0)).value
        with mp.workdps(30):
            want = complex(mp.hyp2f1(1.3, 0.6, 1.7, -2.0))
        assert abs(v - want) < 1e-9

    def test_branch_cut(self):
        with pytest.raises(BranchCutError):
            g1_kernel(P((1,), (2,)), KernelSpec.stieltjes(1, -2.0))


class TestDecomposition:
    def test_closed_case(self):
        rep = decomposition_check(P((1,), (2,)), KernelSpec.laplace(1), 1)
        assert rep.residual <= 1e-9 and rep.eta == 0 and rep.positive

    def test_z_zero(self):
        rep = decomposition_check(P((0.8, 1.4), (1.6, 2.2)), KernelSpec.laplace(0), 1)
        assert rep.residual < 1e-15

    def test_violation_reported(self):
        # G_0 changes sign for these parameters; n = 0 is admissible but too small
        params = P((1.797, 0.612), (0.234, 2.393))
        rep = decomposition_check(params, KernelSpec.laplace(1.0), 0)
        assert not rep.positive and rep.min_density < 0
        t, dens = rep.violations[0]
        assert 0 < t < 1 and dens < -1e-12
        assert rep.residual < 1e-9
        assert decomposition_check(params, KernelSpec.laplace(1.0), 1).positive


class TestGb1:
    def test_constant_bracket(self):
        params = P((0.7, 1.3), (1.1, 2.4))
        want = math.gamma(0.7) * math.gamma(1.3) / (2 * math.gamma(1.1) * math.gamma(2.4))
        assert abs(bracket(params, 0) - want) < 1e-14
        assert abs(gb1_action(params, SmoothFunction.constant(1.0, 3), n=1).value - want) < 1e-14

    @pytest.mark.parametrize("z", [1.0, 2.0, 5.0, 10.0])
    def test_sinc(self, z):
        phi = SmoothFunction.cosine(z, max_order=4)
        for n in (1, 2):
            assert abs(gb1_action(SINC, phi, n).value - math.sin(z) / z) < 1e-8

    def test_n_independence(self):
        params = P((-0.3, 1.2), (0.8, 2.1))
        phi = SmoothFunction.exponential(-0.8, 6)
        v = [gb1_action(params, phi, n).value for n in (2, 3, 4)]
        assert abs(v[0] - v[1]) < 1e-7 and abs(v[1] - v[2]) < 1e-7

    def test_kernel_routes(self):
        params = P((0.7, 1.3), (1.1, 2.4))
        for n in (1, 2, 3):
            for t in (0.2, 0.7):
                assert abs(kernel_kn(params, n, t) - kernel_kn_quad(params, n, t)) < 1e-11


class TestBesselRep:
    def test_sinc(self):
        v = besselrep_series((1,), (1, 1.5), 2.0).value
        assert abs(v - SIN2_OVER_2) < 1e-8

    def test_zero(self):
        assert abs(besselrep_series((0.7,), (1.3, 2.2), 0.0).value - 1) < 1e-14

    @pytest.mark.parametrize("z", [1.0, 5.0, 10.0])
    def test_against_series(self, z):
        a_hat, b = (1.3,), (1.6, 2.4)
        want = pfq(a_hat, b, -z * z / 4).value
        for n in (1, 2):
            assert abs(besselrep_series(a_hat, b, z, n).value - want) < 1e-8
