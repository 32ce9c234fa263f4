import math
import random
import warnings

import mpmath as mp
import pytest

from meijer_norlund.core import ParamVectors
from meijer_norlund.errors import DomainError
from meijer_norlund.ghat import GHatSpec, eta_of, eval_ghat
from meijer_norlund.positivity import (
    OutOfTheoremWarning,
    cos_zero_hypotheses,
    find_cos_zeros,
    fractional_integral,
    monotonicity_check,
    p_alpha_member,
    positivity_scan_1f2,
    scan_zeros,
    signed_min,
    stabilization_N,
    supermajorization,
    v_min,
)

# roots of tan z = z, frozen from mpmath findroot at 30 digits
TAN_ROOTS = (4.49340945790906417530788092728, 7.72525183693770716419506893306,
             10.9041216594288998271487027902)


def P(a, b):
    return ParamVectors(a, b)


class TestVFunction:
    def test_equal_vectors(self):
        m, _ = v_min(P((0.5, 1.7), (0.5, 1.7)))
        assert m == 0

    def test_supermajorized(self):
        m, _ = v_min(P((0.5, 1), (1, 1.5)))
        assert m >= 0

    def test_negative(self):
        m, arg = v_min(P((2,), (1,)))
        assert abs(m + 0.25) < 1e-12 and abs(arg - 0.5) < 1e-6

    def test_needs_positive_a(self):
        with pytest.raises(DomainError):
            v_min(P((-0.5,), (1,)))


class TestMajorization:
    def test_examples(self):
        assert supermajorization((0.5, 1), (1, 1.5))
        assert supermajorization((0.3, 2.2), (0.3, 2.2))
        assert not supermajorization((2,), (1,))

    def test_implies_nonnegative_v(self):
        rng = random.Random(31)
        count = 0
        while count < 200:
            p = rng.randint(1, 4)
            a = [rng.uniform(0.05, 3) for _ in range(p)]
            b = [x + rng.uniform(0, 1.5) for x in a]
            rng.shuffle(b)
            assert supermajorization(a, b)
            m, _ = v_min(P(a, b), grid=400)
            assert m >= -1e-12
            count += 1

    def test_implies_nonnegative_density(self):
        rng = random.Random(32)
        for _ in range(10):
            a = [rng.uniform(0.3, 2.5) for _ in range(2)]
            b = [x + rng.uniform(0.1, 1.2) for x in a]
            spec = GHatSpec(P(a, b), 0)
            for i in range(1, 20):
                assert eval_ghat(spec, i / 20).value.real >= -1e-13


class TestPAlpha:
    def test_degenerate_hull(self):
        assert p_alpha_member(0.5, 1, 1)
        assert p_alpha_member(0.5, 1, 7)
        assert not p_alpha_member(0.5, 0.99, 3)

    def test_vertex_and_outside(self):
        assert p_alpha_member(1, 1.5, 2)
        assert not p_alpha_member(1, 1.6, 1.6)


class TestStabilization:
    def test_closed_case(self):
        assert stabilization_N(P((1,), (2,))) == 0

    def test_needs_larger_n(self):
        # psi < 0; small n leaves Ghat_n sign-changing
        params = P((2.649, 1.292), (-0.154, 1.611))
        assert params.psi.real < 0
        N = stabilization_N(params)
        assert N >= 2
        assert signed_min(params, N - 1) <= 1
        assert signed_min(params, N + 3) > 1

    def test_three_parameter_case(self):
        params = P((1.426, -0.514, 1.587), (2.154, -0.791, 1.358))
        N = stabilization_N(params)
        assert N == 2
        for n in range(N, N + 4):
            s = -1 if eta_of(GHatSpec(params, n)) else 1
            assert all(s * eval_ghat(GHatSpec(params, n), i / 51).value.real > 0 for i in range(1, 51))

    def test_complex_rejected(self):
        with pytest.raises(DomainError):
            stabilization_N(P((1 + 1j,), (2,)))


class TestMonotonicity:
    def test_primitive_of_one(self):
        for x in (0.1, 0.5, 0.9):
            assert abs(fractional_integral((1,), (2,), 0, 1, x) - x) < 1e-12

    def test_gamma_one_is_primitive(self):
        # alpha = 0, beta = 1: plain integral of G^{1,0}(t | 2; 1/2) = sqrt(t (1-t))/Gamma(3/2)
        v = fractional_integral((1.5,), (3.0,), 0.0, 1.0, 0.6)
        with mp.workdps(30):
            direct = mp.quad(lambda t: mp.sqrt(t * (1 - t)) / mp.gamma(1.5), [0, 0.6])
        assert abs(v - float(direct)) < 1e-11

    def test_closed_case_report(self):
        rep = monotonicity_check((1,), (2,), 0, 1, grid=30)
        assert rep.hypotheses_ok and rep.positive and rep.increasing

    def test_half_shift_vectors(self):
        rep = monotonicity_check((1.5, 1.0), (1.5, 2.0), 0.0, 1.0, grid=100)
        assert rep.positive and rep.increasing

    def test_failed_hypothesis_listed(self):
        rep = monotonicity_check((1,), (2,), 0.5, 1.0, grid=10)
        assert not rep.hypotheses_ok and "beta - alpha >= 1" in rep.failed


class TestZeros:
    def test_sinc_case(self):
        reps = find_cos_zeros((1,), (1, 1.5))
        assert [r.interval for r in reps] == [(math.pi, 2 * math.pi), (2 * math.pi, 3 * math.pi)]
        for r, want in zip(reps, TAN_ROOTS):
            assert abs(r.root - want) < 1e-9
            assert r.simple and abs(r.derivative_at_root) > 0.1
            assert r.in_theorem

    def test_full_scan(self):
        roots = scan_zeros((1,), (1, 1.5))
        assert len(roots) == 3
        for r, want in zip(roots, TAN_ROOTS):
            assert abs(r - want) < 1e-9
        assert find_cos_zeros((1,), (1, 1.5))[0].scan_extra_zeros == 1

    def test_one_zero_per_period(self):
        # the two named windows are the start of a pattern: one zero in every (k pi, (k+1) pi)
        rng = random.Random(4)
        for _ in range(6):
            a_hat = [round(rng.uniform(0.6, 2.0), 3) for _ in range(rng.randint(1, 2))]
            b = [round(x + rng.uniform(0, 0.8), 3) for x in sorted(a_hat + [0.5])]
            assert supermajorization(a_hat + [0.5], b)
            roots = scan_zeros(a_hat, b, hi=6 * math.pi - 1e-9)
            assert [int(r // math.pi) for r in roots] == [1, 2, 3, 4, 5]

    def test_out_of_theorem_is_labelled(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            reps = find_cos_zeros((3,), (1, 1.5))
        assert any(issubclass(w.category, OutOfTheoremWarning) for w in caught)
        assert not cos_zero_hypotheses((3,), (1, 1.5))
        assert all(not r.in_theorem for r in reps)


class TestPositivityScan:
    def test_member(self):
        scan = positivity_scan_1f2(0.5, 1, 1)
        assert scan.in_theorem and scan.min_value >= 0

    def test_origin(self):
        scan = positivity_scan_1f2(0.5, 1, 1, x_grid=[0.0])
        assert scan.min_value == 1

    def test_outside_hull(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            scan = positivity_scan_1f2(1.0, 1.2, 1.2)
        assert not scan.in_theorem
        assert any(issubclass(w.category, OutOfTheoremWarning) for w in caught)
        assert scan.min_value < 0
