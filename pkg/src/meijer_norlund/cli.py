"""meijer-norlund: command line front end.

usage:
  meijer-norlund eval {g0,ghat,g1,gb1,transform,pfq} [options]
  meijer-norlund verify --suite NAME [--cases N] [--seed S]
  meijer-norlund moments --a A --b B --n N [--k-max K] [--r R]
  meijer-norlund transform --a A --b B --n N --kernel KIND --z Z[,Z...]
  meijer-norlund zeros --a-hat A --b B [--scan-hi X]
  meijer-norlund stabilize --a A --b B [--grid G]

Parameter lists are comma separated; complex entries are written re+imj.
A params file is JSON: {"a": [[re, im], ...], "b": [[re, im], ...], "n": int}.

Exit codes: 0 ok, 1 usage, 2 domain/hypothesis error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

from .core import ParamVectors
from .errors import MeijerError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- parsing


def parse_complex(s: str) -> complex:
    s = s.strip().replace(" ", "")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot read {s!r} as a number") from None


def parse_list(s: str | None) -> list | None:
    if s is None:
        return None
    if not s.strip():
        return []
    return [parse_complex(x) for x in s.split(",")]


def parse_reals(s: str | None) -> list | None:
    v = parse_list(s)
    if v is None:
        return None
    if any(x.imag for x in v):
        raise UsageError("real values expected")
    return [x.real for x in v]


def _read_params_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read params file: {exc}") from None

    def dec(v):
        out = []
        for x in v:
            if isinstance(x, (list, tuple)):
                out.append(complex(x[0], x[1] if len(x) > 1 else 0.0))
            else:
                out.append(complex(x))
        return out

    if not isinstance(data, dict):
        raise UsageError("params file must hold a JSON object")
    return {"a": dec(data["a"]) if "a" in data else None,
            "b": dec(data["b"]) if "b" in data else None,
            "n": data.get("n")}


def _params(args, need_n=False):
    a, b, n = parse_list(getattr(args, "a", None)), parse_list(getattr(args, "b", None)), getattr(args, "n", None)
    if args.params_file:
        pf = _read_params_file(args.params_file)
        a = a if a is not None else pf["a"]
        b = b if b is not None else pf["b"]
        n = n if n is not None else pf["n"]
    if a is None or b is None:
        raise UsageError("both --a and --b are required (or a params file)")
    if need_n and n is None:
        raise UsageError("--n is required")
    return ParamVectors(a, b), n


# ---------------------------------------------------------------- output


def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    if isinstance(x, (list, dict)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def _clean(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def emit(rows, fmt, columns=None, extra=None, out=None):
    """Write rows as CSV (header first) or JSON (a list, or ``extra`` plus rows)."""
    out = out or sys.stdout
    if fmt == "csv":
        if columns is None:
            columns = list(rows[0].keys()) if rows else []
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r.get(c, "")) for c in columns])
        out.write(buf.getvalue())
        return
    payload = rows if extra is None else dict(extra, rows=rows)
    out.write(json.dumps(_clean(payload), sort_keys=True, indent=2) + "\n")


def emit_one(row, fmt, columns=None):
    if fmt == "csv":
        emit([row], "csv", columns)
    else:
        sys.stdout.write(json.dumps(_clean(row), sort_keys=True, indent=2) + "\n")


def _payload(res):
    return {"value_re": res.value.real, "value_im": res.value.imag,
            "abs_err": res.abs_err, "method": str(res.method.value), "count": res.count}


# ---------------------------------------------------------------- commands


def _test_function(args, max_order):
    from .functionals import SmoothFunction

    kind = args.phi
    if kind == "const":
        return SmoothFunction.constant(1.0, max_order)
    if kind == "exp":
        return SmoothFunction.exponential(parse_complex(args.z), max_order)
    if kind == "cos":
        return SmoothFunction.cosine(parse_complex(args.z).real, max_order=max_order)
    if kind == "poly":
        return SmoothFunction.polynomial(parse_list(args.coeffs or "1"), max_order)
    raise UsageError(f"unknown test function {kind!r}")


def _kernel(args):
    from .moments import KernelSpec

    z = parse_complex(args.z)
    if args.kernel == "stieltjes":
        return KernelSpec.stieltjes(parse_complex(args.sigma), z)
    if args.kernel == "laplace":
        return KernelSpec.laplace(z)
    if args.kernel == "bessel":
        return KernelSpec.bessel(parse_complex(args.nu), z)
    return KernelSpec.hypergeom(parse_list(args.c) or [], parse_list(args.d) or [], z)


def cmd_eval(args):
    from .functionals import g1_action, gb1_action, auto_n
    from .ghat import GHatSpec, eval_ghat
    from .hypergeom import MAX_TERMS, SERIES_TOL, pfq
    from .moments import hyper_transform
    from .norlund import eval_g0

    what = args.what
    if what == "pfq":
        if args.upper is None or args.lower is None or args.z is None:
            raise UsageError("eval pfq needs --upper, --lower and --z")
        res = pfq(parse_list(args.upper), parse_list(args.lower), parse_complex(args.z),
                  tol=args.tol or SERIES_TOL, max_terms=args.max_terms or MAX_TERMS)
    elif what == "g0":
        params, _ = _params(args)
        res = eval_g0(params, _need(args.t, "--t"))
    elif what == "ghat":
        params, n = _params(args, need_n=True)
        res = eval_ghat(GHatSpec(params, int(n)), _need(args.t, "--t"))
    elif what in ("g1", "gb1"):
        params, n = _params(args)
        n = auto_n(params) if n is None else int(n)
        phi = _test_function(args, max(n, 1) + 2)
        fn = g1_action if what == "g1" else gb1_action
        res = fn(params, phi, n, args.quad_tol)
    elif what == "transform":
        params, n = _params(args, need_n=True)
        res = hyper_transform(GHatSpec(params, int(n)), _kernel(args))
    else:
        raise UsageError(f"unknown eval target {what!r}")
    emit_one(_payload(res), args.output, ["value_re", "value_im", "abs_err", "method", "count"])
    return EXIT_OK


def _need(v, flag):
    if v is None:
        raise UsageError(f"{flag} is required")
    return float(v)


def cmd_verify(args):
    from .verify import SUITES, run_suite

    names = SUITES if args.suite == "all" else [args.suite]
    rows = []
    for name in names:
        rows.extend(run_suite(name, seed=args.seed, cases=args.cases, tol=args.tol))
    failures = sum(not r["pass"] for r in rows)
    summary = {"suite": args.suite, "cases": len(rows), "failures": failures,
               "max_residual": max((r["residual"] for r in rows), default=0.0)}
    if args.output == "csv":
        emit(rows, "csv", ["suite", "case", "params", "residual", "tol", "pass"])
        sys.stderr.write(f"# {summary['suite']}: {summary['cases']} cases, {failures} failed, "
                         f"max residual {summary['max_residual']:.3e}\n")
    else:
        emit(rows, "json", extra={"summary": summary})
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_moments(args):
    from .ghat import GHatSpec
    from .moments import mixed_moment, moment_mk_alt

    params, n = _params(args, need_n=True)
    spec = GHatSpec(params, int(n))
    rows = []
    for k in range(args.k_max + 1):
        v = mixed_moment(spec, k, args.r)
        row = {"k": k, "r": args.r, "value_re": v.real, "value_im": v.imag}
        if args.r == 0:
            w = moment_mk_alt(spec, k)
            row["alt_re"], row["alt_im"] = w.real, w.imag
        rows.append(row)
    emit(rows, args.output)
    return EXIT_OK


def cmd_transform(args):
    from .ghat import GHatSpec
    from .moments import hyper_transform

    params, n = _params(args, need_n=True)
    spec = GHatSpec(params, int(n))
    rows = []
    for z in args.z.split(","):
        args_z = argparse.Namespace(**vars(args))
        args_z.z = z
        res = hyper_transform(spec, _kernel(args_z))
        zc = parse_complex(z)
        rows.append({"z_re": zc.real, "z_im": zc.imag, **_payload(res)})
    emit(rows, args.output)
    return EXIT_OK


def cmd_zeros(args):
    from .positivity import OutOfTheoremWarning, find_cos_zeros, cos_zero_hypotheses

    a_hat = parse_reals(args.a_hat)
    b = parse_reals(args.b)
    if a_hat is None or b is None:
        raise UsageError("--a-hat and --b are required")
    if args.strict and not cos_zero_hypotheses(a_hat, b):
        sys.stderr.write("theorem hypotheses fail for these parameters\n")
        return EXIT_DOMAIN
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", OutOfTheoremWarning)
        reports = find_cos_zeros(a_hat, b, args.scan_hi)
    for w in caught:
        sys.stderr.write(f"warning: {w.message}\n")
    rows = [{"interval_lo": r.interval[0], "interval_hi": r.interval[1], "root": r.root,
             "fprime": r.derivative_at_root, "simple": r.simple,
             "scan_extra_zeros": r.scan_extra_zeros, "in_theorem": r.in_theorem}
            for r in reports]
    emit(rows, args.output, ["interval_lo", "interval_hi", "root", "fprime", "simple"])
    return EXIT_OK


def cmd_stabilize(args):
    from .positivity import signed_min, stabilization_N

    params, _ = _params(args)
    N = stabilization_N(params, args.grid)
    evidence = [signed_min(params, m, args.grid) for m in (N, N + 1, N + 2)]
    row = {"N": N, "grid": args.grid, "heuristic": True,
           "margin_N": evidence[0], "margin_N1": evidence[1], "margin_N2": evidence[2]}
    emit_one(row, args.output)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _common():
    p = _Parser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--tol", type=float, default=None,
                   help="series tolerance for eval; pass threshold override for verify")
    g.add_argument("--max-terms", type=int, default=100000)
    g.add_argument("--quad-tol", type=float, default=1e-11)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", choices=("json", "csv"), default="json")
    g.add_argument("--params-file", default=None)
    g.add_argument("--strict", action="store_true")
    return p


def _param_flags(p, n=True):
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    if n:
        p.add_argument("--n", type=int, default=None)


def build_parser():
    common = _common()
    parser = _Parser(prog="meijer-norlund", description=__doc__.split("\n\n")[0],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate one quantity")
    evs = ev.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for name in ("g0", "ghat", "g1", "gb1", "transform", "pfq"):
        q = evs.add_parser(name, parents=[common])
        if name != "pfq":
            _param_flags(q)
        if name in ("g0", "ghat"):
            q.add_argument("--t", type=float, default=None)
        if name in ("g1", "gb1"):
            q.add_argument("--phi", choices=("const", "exp", "cos", "poly"), default="const")
            q.add_argument("--z", default="1")
            q.add_argument("--coeffs", default=None)
        if name == "transform":
            _kernel_flags(q)
        if name == "pfq":
            q.add_argument("--upper", default=None)
            q.add_argument("--lower", default=None)
            q.add_argument("--z", default=None)
        q.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", parents=[common], help="run a randomized identity suite")
    v.add_argument("--suite", required=True,
                   choices=("connection", "mellin", "moments", "moment_forms", "summation",
                            "kernel_action", "decomposition", "g2133", "all"))
    v.add_argument("--cases", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("moments", parents=[common], help="moment table")
    _param_flags(m)
    m.add_argument("--k-max", type=int, default=8)
    m.add_argument("--r", type=int, default=0)
    m.set_defaults(func=cmd_moments)

    t = sub.add_parser("transform", parents=[common], help="transform table over z")
    _param_flags(t)
    _kernel_flags(t)
    t.set_defaults(func=cmd_transform)

    z = sub.add_parser("zeros", parents=[common], help="zeros of p-1Fp(-z^2/4) - cos z")
    z.add_argument("--a-hat", default=None)
    z.add_argument("--b", default=None)
    z.add_argument("--scan-hi", type=float, default=4 * math.pi)
    z.set_defaults(func=cmd_zeros)

    s = sub.add_parser("stabilize", parents=[common], help="sign stabilization search")
    _param_flags(s, n=False)
    s.add_argument("--grid", type=int, default=200)
    s.set_defaults(func=cmd_stabilize)
    return parser


def _kernel_flags(q):
    q.add_argument("--kernel", choices=("stieltjes", "laplace", "bessel", "hypergeom"),
                   default="laplace")
    q.add_argument("--z", default="1")
    q.add_argument("--sigma", default="1")
    q.add_argument("--nu", default="0.5")
    q.add_argument("--c", default=None)
    q.add_argument("--d", default=None)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("tol", "quad_tol"):
        v = getattr(args, name, None)
        if v is not None and not v > 0:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"meijer-norlund: error: {exc}\n")
        return EXIT_USAGE
    except (MeijerError, OverflowError, ZeroDivisionError) as exc:
        sys.stderr.write(f"meijer-norlund: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    except ValueError as exc:
        sys.stderr.write(f"meijer-norlund: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
