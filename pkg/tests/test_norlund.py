import math
import random

import pytest

from meijer_norlund.core import ParamVectors
from meijer_norlund.errors import DomainError
from meijer_norlund.gamma import gamma_vec
from meijer_norlund.norlund import eval_g0, mellin_rhs, norlund_coeffs, q_polynomial
from meijer_norlund.quadrature import integrate01

from oracles import g0_p2, meijer_g0, norlund_lattice, norlund_p3

# p=2, public a=(0.5, 1), b=(1.5, 2), t=0.7; frozen from a 30-digit closed-form evaluation
G0_P2_AT_07 = 0.390457218668787279937634359386


def rel(x, y):
    return abs(x - y) / max(1.0, abs(y))


def P(a, b):
    return ParamVectors(a, b)


class TestCoefficients:
    def test_first_is_one(self):
        for a, b in [((0.3,), (1.2,)), ((0.5, 1), (1.5, 2)), ((0.1, 0.7, 2.4), (1, 1, 1))]:
            assert norlund_coeffs(P(a, b), len(a), 0).values == (1.0,)

    def test_p2_closed_form(self):
        # pivot 2: g_j = (b1 - a1)_j (b2 - a1)_j / j!
        g = norlund_coeffs(P((0.5, 1), (1.5, 2)), 2, 6).values
        assert g[1] == pytest.approx(1.5, rel=1e-15)
        for j in range(7):
            want = math.gamma(1 + j) * math.gamma(1.5 + j) / math.gamma(1.5) / math.factorial(j)
            assert rel(g[j], want) < 1e-14

    def test_p3_closed_form(self):
        rng = random.Random(2)
        for _ in range(10):
            a = [round(rng.uniform(0.1, 3), 3) for _ in range(3)]
            b = [round(rng.uniform(0.5, 4), 3) for _ in range(3)]
            g = norlund_coeffs(P(a, b), 3, 8).values
            for n in range(9):
                w = norlund_p3(a, b, n)
                assert abs(g[n] - w) <= 1e-12 * max(1.0, abs(w))

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    def test_lattice_enumeration(self, p):
        rng = random.Random(p)
        a = [round(rng.uniform(-1, 3), 3) for _ in range(p)]
        b = [round(rng.uniform(0, 4), 3) for _ in range(p)]
        g = norlund_coeffs(P(a, b), p, 7).values
        for j in range(8):
            w = norlund_lattice(a, b, j)
            assert abs(g[j] - w) <= 1e-12 * max(1.0, abs(w))

    def test_pivot_is_a_swap(self):
        a, b = [0.3, 1.1, 2.2], [1.0, 1.7, 2.9]
        g1 = norlund_coeffs(P(a, b), 1, 6).values
        swapped = [a[2], a[1], a[0]]
        for j in range(7):
            w = norlund_lattice(swapped, b, j)
            assert abs(g1[j] - w) <= 1e-12 * max(1.0, abs(w))

    def test_bad_pivot(self):
        with pytest.raises(ValueError):
            norlund_coeffs(P((1, 2), (2, 3)), 3, 4)


class TestG0:
    def test_p1_constant(self):
        for t in (0.05, 0.3, 0.5, 0.77, 0.999):
            assert abs(eval_g0(P((1,), (2,)), t).value - 1) < 1e-15

    def test_p2_frozen(self):
        v = eval_g0(P((0.5, 1), (1.5, 2)), 0.7).value
        assert abs(v - G0_P2_AT_07) < 1e-11
        assert abs(g0_p2((0.5, 1), (1.5, 2), 0.7) - G0_P2_AT_07) < 1e-15

    def test_half_shift_density_is_one(self):
        # G^{2,0}(x | 1/2, 1; 1/2, 0) = 1 on (0, 1)
        for t in (0.01, 0.25, 0.6, 0.95):
            assert abs(eval_g0(P((1.5, 1.0), (1.5, 2.0)), t).value - 1) < 1e-14

    def test_both_routes_and_mpmath(self):
        rng = random.Random(4)
        for _ in range(25):
            p = rng.randint(1, 4)
            a = [round(rng.uniform(0.2, 3), 3) for _ in range(p)]
            b = [round(rng.uniform(0.5, 4), 3) for _ in range(p)]
            if sum(b) - sum(a) < 0.3:
                b[0] += 1
            params = P(a, b)
            for t in (0.2, 0.45, 0.55, 0.8):
                want = meijer_g0(a, b, t)
                scale = max(1.0, abs(want))
                assert abs(eval_g0(params, t).value - want) <= 1e-10 * scale
                assert abs(eval_g0(params, t, route="unity").value - want) <= 1e-9 * scale

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_g0(P((1,), (2,)), 1.0)
        with pytest.raises(DomainError):
            eval_g0(P((1,), (2,)), 0.0)


class TestMellin:
    def test_p1(self):
        # public a=(1), b=(2): int t * 1 dt = 1/2 at s=2
        assert abs(mellin_rhs(P((1,), (2,)), 2) - 0.5) < 1e-15

    def test_q_identically_one(self):
        q = q_polynomial(P((1, 2), (1.5, 1.5)))
        assert q.degree == 0 and q(3.7) == 1

    def test_psi_zero_rhs(self):
        params = P((1, 2), (1.5, 1.5))
        for s in (1.0, 2.0, 2.5):
            want = gamma_vec([s, s + 1]) / gamma_vec([s + 0.5, s + 0.5]) - 1
            assert abs(mellin_rhs(params, s) - want) < 1e-14

    def test_q_degree_one(self):
        # psi = -1; the function vanishes on (0, 1) so the transform is 0
        params = P((2,), (1,))
        q = q_polynomial(params)
        assert q.degree == 1
        assert abs(q(0.0) - 1) < 1e-15 and abs(q(1.0) - 2) < 1e-15
        for s in (1.0, 2.0, 2.5):
            assert abs(mellin_rhs(params, s)) < 1e-14

    def test_pivot_independence(self):
        params = P((0.3, 1.1, 2.2), (0.5, 0.6, 0.5))  # psi = -2
        q1 = q_polynomial(params, 1)
        for k in (2, 3):
            qk = q_polynomial(params, k)
            for c1, ck in zip(q1.coeffs, qk.coeffs):
                assert abs(c1 - ck) <= 1e-12 * max(1e-300, abs(c1))

    def test_against_quadrature(self):
        params = P((0.8, 1.7), (1.9, 2.4))

        def f(t, tc):
            return t * eval_g0(params, t, tc=tc).value

        q = integrate01(f, 1e-13, pair=True).value
        assert abs(q - mellin_rhs(params, 2.0)) < 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            mellin_rhs(P((0.5,), (2,)), 0.4)
        with pytest.raises(DomainError):
            q_polynomial(P((1, 2), (1.7, 1.5)))
