import math
import random

import mpmath as mp
import pytest

from meijer_norlund.core import ParamVectors
from meijer_norlund.errors import DomainError
from meijer_norlund.ghat import (
    Finite,
    GHatSpec,
    PowerSingular,
    connection_residual,
    eval_ghat,
    leading_term,
    normalize_params,
    origin_sign_info,
    unity_limit,
)
from meijer_norlund.norlund import eval_g0
from meijer_norlund.quadrature import fractional_primitive, integrate01


def S(a, b, n):
    return GHatSpec(ParamVectors(a, b), n)


def mp_ghat(a, b, n, t):
    # G^{p,1}_{p+1,p+1}(t | n, b+n-1 ; a+n-1, 0) / Gamma(a), public a, b
    with mp.workdps(30):
        g = mp.meijerg([[n], [x + n - 1 for x in b]], [[x + n - 1 for x in a], [0]], t)
        return complex(g / mp.fprod(mp.gamma(x) for x in a))


class TestEval:
    def test_closed_form_chain(self):
        assert abs(eval_ghat(S((1,), (2,), 2), 0.6).value - 0.18) < 1e-15
        for n in range(7):
            for t in (0.1, 0.5, 0.9):
                assert abs(eval_ghat(S((1,), (2,), n), t).value - t ** n / math.factorial(n)) < 1e-14

    def test_integer_branch(self):
        assert abs(eval_ghat(S((-1,), (1,), 3), 0.5).value - 0.625) < 1e-15

    def test_n_zero_is_g0(self):
        params = ParamVectors((0.7, 1.9), (1.6, 2.8))
        for t in (0.2, 0.7):
            g0 = eval_g0(params, t).value / (math.gamma(0.7) * math.gamma(1.9))
            assert abs(eval_ghat(GHatSpec(params, 0), t).value - g0) < 1e-13

    def test_against_mpmath(self):
        rng = random.Random(8)
        for _ in range(20):
            p = rng.randint(1, 3)
            a = [round(rng.uniform(0.2, 3), 3) for _ in range(p)]
            b = [round(rng.uniform(0.3, 4), 3) for _ in range(p)]
            n = rng.randint(1, 4)
            spec = S(a, b, n)
            for t in (0.15, 0.5, 0.85):
                want = mp_ghat(a, b, n, t)
                assert abs(eval_ghat(spec, t).value - want) <= 1e-10 * max(1.0, abs(want))

    def test_routes_agree(self):
        spec = S((0.4, 1.3), (1.1, 2.6), 2)
        for t in (0.4, 0.6):
            o = eval_ghat(spec, t, route="origin").value
            u = eval_ghat(spec, t, route="unity").value
            assert abs(o - u) < 1e-12

    def test_coincident_a(self):
        # a1 = a2 has no origin series; the unity route takes over
        spec = S((0.5, 0.5), (2, 3), 1)
        want = mp_ghat((0.5, 0.5), (2, 3), 1, 0.6)
        assert abs(eval_ghat(spec, 0.6).value - want) < 1e-11

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_ghat(S((1,), (2,), 1), 0.0)
        with pytest.raises(DomainError):
            eval_ghat(S((1,), (2,), 1), 1.5)
        with pytest.raises(ValueError):
            GHatSpec(ParamVectors((1,), (2,)), -1)


class TestPrimitive:
    def test_closed_case(self):
        v = fractional_primitive(S((1,), (2,), 2), 0, 1.0).value
        assert abs(v - 0.5) < 1e-12

    def test_single_integration(self):
        spec = S((0.6, 1.4), (1.5, 2.2), 3)
        x = 0.7
        inner = GHatSpec(spec.params, 2)
        direct = integrate01(lambda v: eval_ghat(inner, x * v).value, 1e-12).value * x
        assert abs(fractional_primitive(spec, 2, x).value - direct) < 1e-12

    def test_random_mismatch(self):
        rng = random.Random(12)
        for _ in range(8):
            a = [round(rng.uniform(0.3, 2.5), 3) for _ in range(2)]
            b = [round(rng.uniform(0.5, 3.5), 3) for _ in range(2)]
            spec = S(a, b, 3)
            for x in (0.3, 0.8):
                q = fractional_primitive(spec, 0, x).value
                assert abs(q - eval_ghat(spec, x).value) < 1e-8

    def test_derivative_chain(self):
        # d/dt Ghat_n = Ghat_{n-1}
        spec = S((0.7, 1.6), (1.3, 2.9), 3)
        h = 1e-5
        for t in (0.3, 0.6):
            fd = (eval_ghat(spec, t + h).value - eval_ghat(spec, t - h).value) / (2 * h)
            assert abs(fd - eval_ghat(S((0.7, 1.6), (1.3, 2.9), 2), t).value) < 1e-8


class TestEntireInA:
    def test_continuous_through_pole(self):
        # Ghat_n/Gamma(a) stays finite as a -> -1 and meets the integer branch
        base = eval_ghat(S((-1,), (1,), 3), 0.5).value
        for eps in (1e-4, -1e-4):
            near = eval_ghat(S((-1 + eps,), (1,), 3), 0.5).value
            assert abs(near - base) < 1e-3


class TestSignInfo:
    def test_closed_case(self):
        info = origin_sign_info(S((1,), (2,), 2))
        assert info.eta == 0 and info.log_power == 0
        (e, c), = info.leading_coeffs
        assert abs(e - 2) < 1e-15 and abs(c - 0.5) < 1e-15
        assert abs(leading_term(S((1,), (2,), 2), 0.3) - 0.045) < 1e-15

    def test_log_power(self):
        info = origin_sign_info(S((0.5, 0.5), (2, 3), 1))
        assert info.log_power == 1

    def test_integer_case(self):
        info = origin_sign_info(S((-1,), (1,), 3))
        assert info.integer_case and info.m == 1 and info.eta == 0
        assert abs(info.leading_exponent - 1) < 1e-15
        assert abs(leading_term(S((-1,), (1,), 3), 0.01) - 0.01) < 1e-15

    def test_complex_rejected(self):
        with pytest.raises(DomainError):
            origin_sign_info(S((0.5 + 1j,), (2,), 1))


class TestNormalize:
    def test_removed_component(self):
        nz = normalize_params(ParamVectors((0.5, 1), (1, 1.5)))
        assert nz.a == (0.5,) and nz.removed == (1,)

    def test_unchanged(self):
        nz = normalize_params(ParamVectors((0.5, 1), (1.5, 2)))
        assert nz.a == (0.5, 1) and nz.removed == ()

    def test_one_b_per_a(self):
        nz = normalize_params(ParamVectors((1, 1), (1, 3)))
        assert nz.a == (1,) and len(nz.removed) == 1


class TestUnity:
    def test_closed_case(self):
        lim = unity_limit(S((1,), (2,), 1))
        assert isinstance(lim, Finite) and abs(lim.value - 1) < 1e-15
        assert abs(eval_ghat(S((1,), (2,), 1), 1.0).value - 1) < 1e-15

    def test_power_singular(self):
        spec = S((1.2, 2.0), (0.9, 1.6), 1)  # psi = -0.7
        lim = unity_limit(spec)
        assert isinstance(lim, PowerSingular)
        assert abs(lim.exponent - (-0.7)) < 1e-14
        t = 1 - 1e-6
        ratio = eval_ghat(spec, t).value / (lim.coefficient * (1 - t) ** lim.exponent)
        assert abs(ratio - 1) < 1e-2

    def test_integer_psi_correction(self):
        spec = S((1.3, 2.2), (0.5, 1.0), 2)  # psi = -2 >= n - 1
        lim = unity_limit(spec)
        assert isinstance(lim, Finite)
        t = 1 - 1e-9
        assert abs(eval_ghat(spec, t).value - lim.value) < 1e-7
        # value at 1 as a primitive of Ghat_1, integrated by quadrature
        one = GHatSpec(spec.params, 1)
        q = integrate01(lambda t, tc: eval_ghat(one, t, tc=tc).value, 1e-12, pair=True).value
        assert abs(q - lim.value) < 1e-9


class TestConnection:
    def test_closed_case_zero(self):
        for x in (0.2, 0.5, 0.9):
            assert connection_residual(S((1,), (2,), 1), x) < 1e-15

    def test_random_p2(self):
        rng = random.Random(21)
        for _ in range(10):
            a = [round(rng.uniform(-1, 3), 3) for _ in range(2)]
            b = [round(rng.uniform(-0.5, 4), 3) for _ in range(2)]
            for n in range(0, 4):
                assert connection_residual(S(a, b, n), 0.5) < 1e-9
