"""Command-line front end: ``fracvar <command> [options]``.

Exit codes: 0 success, 1 argument errors, 2 numerical or budget failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import sys
from fractions import Fraction

from . import __version__
from ._limits import FracvarError
from .analysis import (
    DEFAULT_H_GRID,
    classify,
    hurst_sweep,
    signed_variation_limit,
    variation_slope,
)
from .base_functions import parse_phi
from .fractal import DEFAULT_TOL, FractalSpec, eval_f
from .increments import (
    IIDTwoPointLaw,
    exact_partial_sum_distribution,
    iid_params,
    law_distribution,
    mc_law_estimate,
)
from .moments import moments_recursive, power_moment_truncated
from .variation import partition_sum, signed_partition_sum

DEFAULT_SEED = 0

_POWER = re.compile(
    r"^(?P<sign>[+-]?)\s*(?P<base>b|\d+(?:\.\d*)?)\s*(?:\^|\*\*)\s*"
    r"\(?\s*(?P<exp>[+-]?\d+(?:/\d+)?|[+-]?\d*\.\d+)\s*\)?$"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_real(text, b=None):
    """Parse ``0.5``, ``1/4``, ``b^(-1/3)``, ``-3^(-1/3)`` or ``2**(-0.5)``.

    Power forms keep the exponent as an exact fraction until the final
    conversion.
    """
    text = text.strip()
    # a trailing ellipsis marks a truncated decimal, e.g. 0.4807498...
    text = text[:-3] if text.endswith("...") else text
    m = _POWER.match(text)
    if m:
        base = m["base"]
        if base == "b":
            if b is None:
                raise UsageError(f"{text!r} refers to b but no --b was given")
            base = b
        exp = Fraction(m["exp"])
        value = float(base) ** (exp.numerator / exp.denominator)
        return -value if m["sign"] == "-" else value
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse a number from {text!r}") from None


def parse_range(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        return int(lo), int(lo)
    return int(lo), int(hi)


def parse_grid(text):
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        n = int(round((stop - start) / step))
        return tuple(round(start + i * step, 10) for i in range(n + 1))
    return tuple(float(x) for x in text.split(","))


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    if x is None:
        return ""
    return str(getattr(x, "value", x))


class Table:
    def __init__(self, columns):
        self.columns = list(columns)
        self.rows = []

    def add(self, *values):
        self.rows.append([_fmt(v) for v in values])

    def render(self, fmt, provenance):
        buf = io.StringIO()
        if fmt == "csv":
            buf.write(f"# {provenance}\n")
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(self.rows)
        else:
            cells = [self.columns] + self.rows
            widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
            for r in cells:
                buf.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
        return buf.getvalue()


def _spec(args):
    if args.b is None:
        raise UsageError("--b is required")
    if (args.alpha is None) == (args.hurst is None):
        raise UsageError("give exactly one of --alpha and --hurst")
    if args.alpha is not None:
        alpha = parse_real(args.alpha, args.b)
    else:
        alpha = float(args.b) ** -parse_real(args.hurst, args.b)
    phi = parse_phi(args.phi, args.b, alpha)
    return FractalSpec(phi, args.b, alpha)


def cmd_eval(args):
    spec = _spec(args)
    table = Table(["t", "value"])
    for t in args.t.split(","):
        x = parse_real(t, args.b)
        table.add(x, eval_f(spec, x, args.tol))
    return table


def _series(args, signed):
    spec = _spec(args)
    n_min, n_max = parse_range(args.n)
    if n_min > n_max:
        raise UsageError(f"empty range --n {args.n}")
    t = parse_real(args.t)
    power = args.q if signed else parse_real(args.p)
    table = Table(["n", "p", "t", "b", "alpha", "phi", "value"])
    for n in range(n_min, n_max + 1):
        if signed:
            value = signed_partition_sum(spec, power, t, n)
        else:
            value = partition_sum(spec, power, t, n)
        table.add(n, power, t, spec.b, spec.alpha, spec.phi.name, value)
    return table


def cmd_variation(args):
    return _series(args, signed=False)


def cmd_signed(args):
    return _series(args, signed=True)


def cmd_classify(args):
    spec = _spec(args)
    rep = classify(spec)
    ev = rep.degenerate_evidence
    table = Table(["regime", "q", "H", "sufficient_condition", "max_abs_Sn", "depth",
                   "z_zero_candidate"])
    table.add(rep.regime, rep.q, rep.hurst, rep.sufficient_condition_holds,
              ev and ev.max_abs_Sn, ev and ev.depth, ev and ev.z_zero_candidate)
    return table


def cmd_slope(args):
    spec = _spec(args)
    res = variation_slope(spec, args.method, depth=args.depth, samples=args.samples,
                          seed=args.seed)
    table = Table(["q", "slope", "error", "method", "depth"])
    table.add(res.q, res.slope, res.error, res.method, res.depth)
    return table


def cmd_signed_limit(args):
    spec = _spec(args)
    res = signed_variation_limit(spec, args.q)
    table = Table(["q", "kind", "value", "value_even_n", "value_odd_n"])
    table.add(res.q, res.kind, res.value, res.value_even_n, res.value_odd_n)
    return table


def _law(args):
    """Two-point law and ratio gamma from --mu/--nu/--p or --b/--ell."""
    if args.ell is not None:
        if args.b is None:
            raise UsageError("--ell needs --b")
        law = iid_params(args.b, args.ell)
    elif None in (args.mu, args.nu, args.p):
        raise UsageError("give --mu, --nu and --p, or --b and --ell")
    else:
        law = IIDTwoPointLaw(parse_real(args.mu), parse_real(args.nu), parse_real(args.p))
    if args.gamma is not None:
        gamma = parse_real(args.gamma, args.b)
    elif args.alpha is not None and args.b is not None:
        gamma = 1 / (parse_real(args.alpha, args.b) * args.b)
    else:
        raise UsageError("give --gamma, or --alpha with --b")
    return law, gamma


def cmd_moments(args):
    law, gamma = _law(args)
    mu, nu, p = (float(x) for x in (law.mu, law.nu, law.p))
    if args.method == "recursion":
        table = Table(["k", "moment"])
        for k, m in enumerate(moments_recursive(mu, nu, p, gamma, args.k).moments):
            table.add(k, float(m))
        return table
    table = Table(["k", "moment", "error"])
    depth = args.depth
    if args.method == "enumerate":
        if depth is None:
            depth = 20
        if args.dump_dist:
            _dump(law_distribution(law, gamma, depth), args.dump_dist)
        for k in range(args.k + 1):
            res = power_moment_truncated(law, gamma, k, depth) if k else None
            table.add(k, res.value if res else 1.0, res.error_bound if res else 0.0)
        return table
    for k in range(1, args.k + 1):
        res = mc_law_estimate(law, gamma, k, signed=True, depth=depth,
                              samples=args.samples, seed=args.seed)
        table.add(k, res.estimate, res.std_error)
    return table


def _dump(dist, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["value", "probability", "state"])
        for v, pr, s in dist.rows():
            w.writerow([repr(v), repr(pr), s])


def cmd_distribution(args):
    spec = _spec(args)
    dist = exact_partial_sum_distribution(spec, args.n, args.mode)
    table = Table(["value", "probability", "state"])
    for v, pr, s in dist.rows():
        table.add(v, pr, s)
    return table


def cmd_sweep(args):
    grid = parse_grid(args.H) if args.H else DEFAULT_H_GRID
    table = Table(["H", "q", "slope", "error", "method", "b", "phi"])
    for b in (int(x) for x in args.b_list.split(",")):
        phi = parse_phi(args.phi, b)
        params = {"depth": args.depth}
        if args.method == "mc":
            params.update(samples=args.samples, seed=args.seed)
        for row in hurst_sweep(phi, b, grid, args.method, **params):
            error = row.error if row.failure is None else f"error: {row.failure}"
            table.add(row.H, row.q, row.slope, error, row.method, row.b, row.phi)
    return table


def cmd_selftest(args):
    from .acceptance import run_all

    checks = run_all(sys.stdout)
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 2 if failed else 0


def _add_spec_args(p):
    p.add_argument("--phi", default="tent", help="base map, e.g. tent, skewed:l=1, sine:amp=0.5")
    p.add_argument("--b", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--alpha", help="alpha as a number or power form such as b^(-1/3)")
    g.add_argument("--hurst", help="Hurst parameter H, sets alpha = b^(-H)")


def _add_mc_args(p):
    p.add_argument("--depth", type=int)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser():
    parser = _Parser(prog="fracvar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def command(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=("csv", "plain"), default="csv")
        p.add_argument("--out")
        return p

    p = command("eval", cmd_eval, "evaluate f at points")
    _add_spec_args(p)
    p.add_argument("--t", required=True, help="comma-separated points")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    for name, fn, signed in (("variation", cmd_variation, False), ("signed", cmd_signed, True)):
        p = command(name, fn, "signed partition sums" if signed else "partition sums")
        _add_spec_args(p)
        if signed:
            p.add_argument("--q", type=int, required=True)
        else:
            p.add_argument("--p", required=True)
        p.add_argument("--t", default="1")
        p.add_argument("--n", required=True, help="level or range lo:hi")

    p = command("classify", cmd_classify, "regime of f")
    _add_spec_args(p)

    p = command("slope", cmd_slope, "slope of the q-th variation")
    _add_spec_args(p)
    p.add_argument("--method", choices=("recursion", "enumeration", "mc"), default="enumeration")
    _add_mc_args(p)

    p = command("signed-limit", cmd_signed_limit, "limit of the signed q-th variation")
    _add_spec_args(p)
    p.add_argument("--q", type=int)

    p = command("moments", cmd_moments, "moments of a two-point Bernoulli convolution")
    for flag in ("--mu", "--nu", "--p", "--gamma", "--alpha"):
        p.add_argument(flag)
    p.add_argument("--b", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--k", type=int, default=16)
    p.add_argument("--method", choices=("recursion", "enumerate", "mc"), default="recursion")
    p.add_argument("--dump-dist", help="write the enumerated law as CSV")
    _add_mc_args(p)

    p = command("distribution", cmd_distribution, "exact law of the partial sum S_n")
    _add_spec_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("auto", "generic", "iid", "markov"), default="auto")

    p = command("sweep", cmd_sweep, "slopes over a grid of Hurst parameters")
    p.add_argument("--phi", default="tent")
    p.add_argument("--b", dest="b_list", default="2,3,4,5", help="comma-separated bases")
    p.add_argument("--H", help="grid lo:hi:step or comma list")
    p.add_argument("--method", choices=("enumeration", "mc"), default="enumeration")
    _add_mc_args(p)

    sub.add_parser("selftest", help="run the acceptance checks").set_defaults(
        func=cmd_selftest, format=None, out=None)
    return parser


def _provenance(args):
    skip = {"func", "format", "out"}
    items = sorted((k, v) for k, v in vars(args).items() if k not in skip and v is not None)
    return f"fracvar {__version__} " + " ".join(f"{k}={v}" for k, v in items)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        result = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FracvarError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ArithmeticError, MemoryError) as exc:
        print(f"{args.command}: numerical failure: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, int):
        return result
    text = result.render(args.format, _provenance(args))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())
