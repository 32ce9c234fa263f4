"""Reference implementations used only by the tests.

Kept deliberately naive: high precision, no shortcuts shared with the package.
"""

import itertools

import mpmath as mp


def spouge_gamma(z, a=40, dps=30):
    # Spouge's approximation; a=40 gives well over 30 correct digits
    with mp.workdps(dps + 20):
        z = mp.mpc(z)
        if mp.re(z) < 0.5:
            return mp.pi / (mp.sin(mp.pi * z) * spouge_gamma(1 - z, a, dps))
        z = z - 1
        s = mp.sqrt(2 * mp.pi)
        for k in range(1, a):
            ck = (-1) ** (k - 1) / mp.factorial(k - 1) * (a - k) ** (k - mp.mpf(0.5)) * mp.exp(a - k)
            s += ck / (z + k)
        return (z + a) ** (z + mp.mpf(0.5)) * mp.exp(-(z + a)) * s


def norlund_lattice(a, b, j):
    """g_j with the last a as pivot, by enumerating the ordered index chain."""
    p = len(a)
    with mp.workdps(40):
        a = [mp.mpc(x) for x in a]
        b = [mp.mpc(x) for x in b]
        if p == 1:
            return mp.mpf(1) if j == 0 else mp.mpf(0)
        psi = [sum(b[i] - a[i] for i in range(m)) for m in range(1, p)]
        total = mp.mpc(0)
        for inner in itertools.combinations_with_replacement(range(j + 1), p - 2):
            chain = (0,) + inner + (j,)
            term = mp.mpc(1)
            for m in range(1, p):
                d = chain[m] - chain[m - 1]
                term *= mp.rf(psi[m - 1] + chain[m - 1], d) / mp.factorial(d) * mp.rf(b[m] - a[m - 1], d)
            total += term
        return complex(total)


def norlund_p3(a, b, n):
    a1, a2, a3 = a
    b1, b2, b3 = b
    psi = sum(b) - sum(a)
    c1, c2 = psi - b1 + a3, psi - b2 + a3
    with mp.workdps(40):
        f = mp.hyp3f2(-n, b3 - a1, b3 - a2, c1, c2, 1)
        return complex(mp.rf(c1, n) * mp.rf(c2, n) / mp.factorial(n) * f)


def g0_p2(a, b, t):
    """G^{2,0}_{2,2}(t | b-1; a-1) from its 2F1 closed form."""
    a1, a2 = (x - 1 for x in a)
    b1, b2 = (x - 1 for x in b)
    psi = b1 + b2 - a1 - a2
    with mp.workdps(30):
        t = mp.mpf(t)
        v = t ** a2 * (1 - t) ** (psi - 1) / mp.gamma(psi) * mp.hyp2f1(b1 - a1, b2 - a1, psi, 1 - t)
        return complex(v)


def meijer_g0(a, b, t):
    """mpmath's own G^{p,0}_{p,p}(t | b-1; a-1)."""
    with mp.workdps(30):
        v = mp.meijerg([[], [x - 1 for x in b]], [[x - 1 for x in a], []], t)
        return complex(v)
