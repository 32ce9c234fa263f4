"""Time the compiled inner loops against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Also times one end-to-end call (eval_g0, p = 3) in a subprocess per backend,
since the backend is fixed at import.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from meijer_norlund import _pykernels as py

try:
    from meijer_norlund import _ckernels as ck
except ImportError:
    ck = None


def workloads():
    rng = random.Random(0)
    zs = [complex(rng.uniform(0.5, 50), rng.uniform(-50, 50)) for _ in range(200)]
    up = [0.7 + 0.2j, 1.9, -0.4]
    lo = [1.3, 2.6]
    psis = [0.8 + 0.1j, 1.7, -0.6]
    shifts = [0.4, 1.1, 2.3]
    return {
        "lanczos_gamma x200": lambda m: [m.lanczos_gamma(z) for z in zs],
        "hyp_series 3F2 z=0.95": lambda m: m.hyp_series(up, lo, 0.95, 1e-17, 20000, -1),
        "norlund_table p=4 J=60": lambda m: m.norlund_table(psis, shifts, 60),
    }


END_TO_END = ("from meijer_norlund.core import ParamVectors; from meijer_norlund.norlund import eval_g0; "
              "import timeit; P = ParamVectors((0.7, 1.3, 2.1), (1.6, 2.4, 3.3)); "
              "print(min(timeit.repeat(lambda: [eval_g0(P, t / 20) for t in range(1, 20)], number=3, repeat=3)) / 3)")


def end_to_end(pure):
    env = dict(os.environ, MEIJER_NORLUND_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if ck is None:
        print("compiled kernels not built; only the pure-Python timings are shown")
    print(f"{'workload':28s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for name, fn in workloads().items():
        t_py = min(timeit.repeat(lambda: fn(py), number=5, repeat=args.repeat)) / 5 * 1e3
        if ck is None:
            print(f"{name:28s} {t_py:12.3f}")
            continue
        t_c = min(timeit.repeat(lambda: fn(ck), number=5, repeat=args.repeat)) / 5 * 1e3
        print(f"{name:28s} {t_py:12.3f} {t_c:14.3f} {t_py / t_c:7.1f}x")
    t_py = end_to_end(True) * 1e3
    if ck is None:
        print(f"{'eval_g0 p=3, 19 points':28s} {t_py:12.3f}")
    else:
        t_c = end_to_end(False) * 1e3
        print(f"{'eval_g0 p=3, 19 points':28s} {t_py:12.3f} {t_c:14.3f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
