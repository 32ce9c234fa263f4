"""Randomized identity suites.  Each case compares two independent routes.

Rows are plain dicts so the CLI can dump them as JSON or CSV directly.
"""

from __future__ import annotations

import math
import random

from .core import ParamVectors
from .functionals import decomposition_check, g1_kernel
from .ghat import GHatSpec, connection_residual, eval_ghat
from .hypergeom import pfq
from .identities import g2133_form1, g2133_form2, g2133_form3, g2133_form4
from .moments import KernelSpec, mixed_moment, moment_mk_alt, summation_series
from .norlund import coincidence_distance, eval_g0, mellin_rhs, q_polynomial
from .positivity import stabilization_N
from .quadrature import integrate01

DEFAULT_TOL = {
    "connection": 1e-9,
    "mellin": 1e-8,
    "moments": 1e-8,
    "moment_forms": 1e-10,
    "summation": 1e-10,
    "kernel_action": 1e-8,
    "decomposition": 1e-9,
    "g2133": 1e-9,
}
DEFAULT_CASES = {
    "connection": 50,
    "mellin": 20,
    "moments": 20,
    "moment_forms": 30,
    "summation": 30,
    "kernel_action": 30,
    "decomposition": 12,
    "g2133": 10,
}
SUITES = tuple(DEFAULT_TOL)
Q_PIVOT_TOL = 1e-12


def _u(rng, lo, hi):
    # three decimals keep the printed parameters exact
    return round(rng.uniform(lo, hi), 3)


def _bad_b(b):
    return any(abs(x - round(x)) < 0.02 and round(x) <= 0 for x in b)


def random_params(rng, p, a_lo, a_hi, b_lo, b_hi, *, min_gap=0.05, psi_min=None):
    while True:
        a = [_u(rng, a_lo, a_hi) for _ in range(p)]
        b = [_u(rng, b_lo, b_hi) for _ in range(p)]
        if coincidence_distance([complex(x) for x in a]) < min_gap or _bad_b(b):
            continue
        if any(abs(x - round(x)) < 0.02 and round(x) <= 0 for x in a):
            continue
        psi = sum(b) - sum(a)
        if abs(psi - round(psi)) < 0.02:
            continue
        if psi_min is not None and psi < psi_min:
            continue
        return ParamVectors(a, b)


def _pdict(params: ParamVectors, **extra):
    def enc(v):
        return [x.real if x.imag == 0 else [x.real, x.imag] for x in v]

    out = {"a": enc(params.a), "b": enc(params.b)}
    out.update(extra)
    return out


def _row(suite, i, params, residual, tol):
    return {"suite": suite, "case": i, "params": params, "residual": residual,
            "tol": tol, "pass": bool(residual <= tol)}


# --------------------------------------------------------------- suites


def suite_connection(rng, cases, tol):
    rows = []
    for i in range(cases):
        if i == 0:
            # psi = -2 makes the companion function's excess a nonpositive integer
            params, n = ParamVectors([1.3, 2.2], [0.5, 1.0]), 2
        else:
            p = rng.randint(1, 3)
            params = random_params(rng, p, -1.5, 3.0, -1.0, 4.0)
            n = rng.randint(0, 4)
        spec = GHatSpec(params, n)
        r = max(connection_residual(spec, x) for x in (0.3, 0.5, 0.7))
        rows.append(_row("connection", i, _pdict(params, n=n), r, tol))
    return rows


def mellin_quad(params: ParamVectors, s: float, tol: float = 1e-13) -> complex:
    def f(t, tc):
        return t ** (s - 1) * eval_g0(params, t, tc=tc).value

    return integrate01(f, tol, pair=True).value


def suite_mellin(rng, cases, tol):
    rows = []
    for i in range(cases):
        p = rng.randint(1, 3)
        if i % 2:
            # snapped branch: psi = -m
            while True:
                params = random_params(rng, p, 0.3, 3.0, 0.3, 3.0)
                m = rng.randint(0, 2)
                shift = -m - params.psi.real
                b = list(params.b)
                b[0] += shift
                cand = ParamVectors(params.a, b)
                if not _bad_b([x.real for x in b]) and min(x.real for x in b) > -0.5:
                    params = cand
                    break
        else:
            params = random_params(rng, p, 0.3, 3.0, 0.3, 3.5, psi_min=0.2)
        r = 0.0
        for s in (1.0, 2.0, 2.5):
            q = mellin_quad(params, s)
            rhs = mellin_rhs(params, s)
            r = max(r, abs(q - rhs) / max(1.0, abs(rhs)))
        row = _row("mellin", i, _pdict(params), r, tol)
        if params.snapped_psi() is not None and p > 1:
            # every pivot must give the same correction polynomial
            q1 = q_polynomial(params, 1)
            rq = 0.0
            for k in range(2, p + 1):
                qk = q_polynomial(params, k)
                for s in (0.0, 1.0, 2.5):
                    rq = max(rq, abs(q1(s) - qk(s)) / max(1e-300, abs(q1(s))))
            row["q_residual"] = rq
            row["pass"] = row["pass"] and rq <= Q_PIVOT_TOL
        rows.append(row)
    return rows


def moment_quad(spec: GHatSpec, k: int, r: int, tol: float = 1e-13) -> complex:
    def f(t, tc):
        return eval_ghat(spec, t, tc=tc).value * t ** k * tc ** r

    return integrate01(f, tol, pair=True).value


def _admissible_spec(rng, p, a_lo=-1.5, a_hi=3.0, n_max=4):
    params = random_params(rng, p, a_lo, a_hi, -1.0, 4.0)
    n_lo = max(0, math.floor(-min(params.a_min, params.psi.real)) + 1)
    return GHatSpec(params, rng.randint(n_lo, max(n_lo, n_max)))


def suite_moments(rng, cases, tol):
    rows = []
    for i in range(cases):
        spec = _admissible_spec(rng, rng.randint(1, 3))
        r = 0.0
        for k in range(5):
            for rr in range(5):
                exact = mixed_moment(spec, k, rr)
                q = moment_quad(spec, k, rr)
                r = max(r, abs(exact - q) / max(1.0, abs(exact)))
        rows.append(_row("moments", i, _pdict(spec.params, n=spec.n), r, tol))
    return rows


def suite_moment_forms(rng, cases, tol):
    rows = []
    for i in range(cases):
        p = rng.randint(1, 3)
        params = random_params(rng, p, -1.5, 3.0, -1.0, 4.0)
        n_lo = max(0, math.floor(-min(params.a_min, params.psi.real)) + 1)
        r = 0.0
        for n in range(n_lo, 7):
            spec = GHatSpec(params, n)
            for k in range(7):
                x = mixed_moment(spec, k, 0)
                y = moment_mk_alt(spec, k)
                r = max(r, abs(x - y) / max(1.0, abs(x)))
        rows.append(_row("moment_forms", i, _pdict(params), r, tol))
    return rows


def _random_z(rng, upper_cap, half_plane):
    while True:
        rad = rng.uniform(0.0, upper_cap)
        ang = rng.uniform(-math.pi, math.pi) if rng.random() < 0.5 else rng.choice([0.0, math.pi])
        z = complex(round(rad * math.cos(ang), 3), round(rad * math.sin(ang), 3))
        if abs(z) > upper_cap:
            continue
        if half_plane and not z.real > -0.45:
            continue
        return z


def suite_summation(rng, cases, tol):
    rows = []
    for i in range(cases):
        p = rng.randint(1, 2)
        params = random_params(rng, p, 0.2, 3.0, 0.3, 4.0)
        s = rng.randint(0, 2)
        u = rng.randint(0, min(2, s + 1))
        c = [_u(rng, 0.2, 2.5) for _ in range(u)]
        d = [_u(rng, 0.3, 3.0) for _ in range(s)]
        z = _random_z(rng, 0.8, u == s + 1)
        rhs = summation_series(params.a, params.b, c, d, z).value
        lhs = pfq(list(params.a) + c, list(params.b) + d, -z).value
        r = abs(lhs - rhs) / max(1.0, abs(lhs))
        rows.append(_row("summation", i, _pdict(params, c=c, d=d, z=[z.real, z.imag]), r, tol))
    return rows


def suite_kernel_action(rng, cases, tol):
    rows = []
    for i in range(cases):
        p = rng.randint(1, 2)
        if i % 5 == 0:
            params = random_params(rng, p, -1.8, -0.1, -1.0, 3.0)
        else:
            params = random_params(rng, p, -1.5, 3.0, -1.0, 4.0)
        s = rng.randint(0, 2)
        u = rng.randint(0, min(2, s + 1))
        c = [_u(rng, 0.2, 2.5) for _ in range(u)]
        d = [_u(rng, 0.3, 3.0) for _ in range(s)]
        z = _random_z(rng, 0.8, False)
        kernel = KernelSpec.hypergeom(c, d, z)
        got = g1_kernel(params, kernel).value
        want = pfq(list(params.a) + c, list(params.b) + d, -z).value
        r = abs(got - want) / max(1.0, abs(want))
        rows.append(_row("kernel_action", i, _pdict(params, c=c, d=d, z=[z.real, z.imag]), r, tol))
    return rows


def suite_decomposition(rng, cases, tol):
    rows = []
    for i in range(cases):
        p = rng.randint(1, 2)
        params = random_params(rng, p, -1.0, 3.0, -0.5, 4.0)
        n = stabilization_N(params)
        kind = ("stieltjes", "laplace", "bessel")[i % 3]
        if kind == "stieltjes":
            kernel = KernelSpec.stieltjes(_u(rng, 0.3, 2.5), _u(rng, 0.0, 0.8))
        elif kind == "laplace":
            kernel = KernelSpec.laplace(_u(rng, 0.0, 4.0))
        else:
            kernel = KernelSpec.bessel(0.5, _u(rng, 0.0, 4.0))
        rep = decomposition_check(params, kernel, n)
        r = rep.residual / max(1.0, abs(rep.lhs))
        if not rep.positive:
            r = math.inf
        rows.append(_row("decomposition", i, _pdict(params, n=n, kernel=kind), r, tol))
    return rows


def suite_g2133(rng, cases, tol):
    rows = []
    for i in range(cases):
        while True:
            a = [_u(rng, 5.0, 7.0), _u(rng, -0.8, 3.0)]
            b = [_u(rng, a[0] - 0.5, a[0] + 1.5), _u(rng, -0.5, 4.0)]
            params = ParamVectors(a, b)
            psi = params.psi.real
            bad = [psi - b[0] + 1, psi - b[1] + 1, a[0] - a[1], psi]
            if all(abs(x - round(x)) > 0.05 for x in bad) and not _bad_b(b):
                break
        n = rng.randint(max(0, math.floor(-min(params.a_min, psi)) + 1), 3)
        t = _u(rng, 0.1, 0.9)
        forms = [g2133_form1(a, b, n, t), g2133_form2(a, b, n, t),
                 g2133_form3(a, b, n, t), g2133_form4(a, b, n, t)]
        scale = max(abs(x) for x in forms)
        r = max(abs(x - y) for x in forms for y in forms) / scale
        rows.append(_row("g2133", i, _pdict(params, n=n, t=t), r, tol))
    return rows


_RUNNERS = {
    "connection": suite_connection,
    "mellin": suite_mellin,
    "moments": suite_moments,
    "moment_forms": suite_moment_forms,
    "summation": suite_summation,
    "kernel_action": suite_kernel_action,
    "decomposition": suite_decomposition,
    "g2133": suite_g2133,
}


def run_suite(name: str, seed: int = 0, cases: int | None = None, tol: float | None = None):
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rng = random.Random(f"{name}:{seed}")
    return _RUNNERS[name](rng, DEFAULT_CASES[name] if cases is None else cases,
                          DEFAULT_TOL[name] if tol is None else tol)

