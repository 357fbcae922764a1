"""Command-line front end: ``kslimit <command> ...``."""

import argparse
import json
import math
import sys

from . import bench, oracle
from .baseline import baseline_isf, baseline_sf
from .dist import kolmogorov_triple
from .errors import DomainError
from .quantile import ProbPair, kolmogi
from .smirnov import ecdf_statistics, maag_dicaire_sf, smirnov_sf_exact, smirnov_sf_limit

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NOCONV = 0, 1, 2, 3


class UsageError(Exception):
    pass


class NonConvergence(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _real(token):
    try:
        return float(token)
    except ValueError:
        raise argparse.ArgumentTypeError("not a number: %r" % token) from None


def _fmt(v, precision):
    if isinstance(v, bool) or isinstance(v, int) or isinstance(v, str):
        return str(v)
    if v is None:
        return ""
    return format(v, ".%dg" % precision)


def _emit(out, fmt, columns, rows, precision, comments=()):
    if fmt == "json":
        json.dump([dict(zip(columns, r)) for r in rows], out, indent=1, allow_nan=True)
        out.write("\n")
        return
    for c in comments:
        out.write("# %s\n" % c)
    cells = [[_fmt(v, precision) for v in r] for r in rows]
    if fmt == "csv":
        out.write(",".join(columns) + "\n")
        for r in cells:
            out.write(",".join(r) + "\n")
        return
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for r in cells:
        out.write("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def cmd_eval(args, out):
    xs = list(args.x)
    if args.grid:
        xs.extend(bench.grid(*args.grid))
    if not xs:
        raise UsageError("no x values given")
    rows = []
    for x in xs:
        if not math.isfinite(x):
            raise DomainError("x must be finite, got %r" % x)
        if args.engine == "baseline":
            r = baseline_sf(x) if x > 0 else baseline_sf(0.0)
            rows.append((x, r.value, 1.0 - r.value, None, r.terms_or_iters))
        else:
            t = kolmogorov_triple(x)
            rows.append((x, t.sf, t.cdf, t.pdf, t.terms))
    _emit(out, args.format, ("x", "sf", "cdf", "pdf", "terms"), rows, args.precision)


class _AppendProb(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        items = getattr(namespace, self.dest) or []
        items.append((self.const, values))
        setattr(namespace, self.dest, items)


def cmd_invert(args, out):
    if not args.probs:
        raise UsageError("give at least one --sf or --cdf probability")
    rows = []
    failed = []
    for side, p in args.probs:
        if not 0 <= p <= 1:
            raise DomainError("probability must lie in [0, 1], got %r" % p)
        pair = ProbPair.from_sf(p) if side == "sf" else ProbPair.from_cdf(p)
        if args.engine == "baseline":
            if pair.p_sf == 0:
                x, its = math.inf, 0
            elif pair.p_sf == 1:
                x, its = 0.0, 0
            else:
                r = baseline_isf(pair.p_sf)
                x, its = r.value, r.terms_or_iters
        else:
            x, rep = kolmogi(pair)
            its = rep.iterations
            if not rep.converged:
                failed.append(p)
        rows.append((side, p, x, its))
    _emit(out, args.format, ("side", "p", "x", "iterations"), rows, args.precision)
    if failed:
        raise NonConvergence("no convergence for p = %s" % ", ".join(map(repr, failed)))


def cmd_smirnov(args, out):
    rows = []
    for x in args.x:
        rows.append((args.n, x, smirnov_sf_exact(args.n, x),
                     smirnov_sf_limit(x * math.sqrt(args.n)), maag_dicaire_sf(args.n, x)))
    _emit(out, args.format, ("n", "x", "sf_exact", "sf_limit", "sf_maag"), rows, args.precision)


def read_pit_file(path):
    """Parse one decimal per line; ``#`` starts a comment."""
    values, bad = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                bad.append("line %d: %r" % (lineno, text))
    if bad:
        raise UsageError("malformed data: " + "; ".join(bad))
    return values


def cmd_kstest(args, out):
    values = read_pit_file(args.data)
    stats = ecdf_statistics(values)
    n = args.n_override or stats.n
    p_two = kolmogorov_triple(math.sqrt(n) * stats.d).sf
    row = (n, stats.d, stats.d_plus, stats.d_minus, p_two,
           smirnov_sf_exact(n, stats.d_plus), maag_dicaire_sf(n, stats.d_plus))
    cols = ("n", "d", "d_plus", "d_minus", "p_two_sided_asymptotic",
            "p_one_sided_exact", "p_one_sided_maag")
    note = ("data are probability-integral-transformed values F(Y_i) in [0, 1]; "
            "one-sided p-values use D_n^+")
    _emit(out, args.format, cols, [row], args.precision, comments=(note,))


def cmd_table(args, out):
    ns = args.n or [1]
    rows = []
    for n in ns:
        if n < 1:
            raise DomainError("n must be >= 1, got %r" % n)
        row = [n]
        for a in args.alpha:
            if not 0 < a < 1:
                raise DomainError("alpha must lie in (0, 1), got %r" % a)
            x, rep = kolmogi(ProbPair.from_sf(a))
            if not rep.converged:
                raise NonConvergence("no convergence for alpha = %r" % a)
            row.append(x / math.sqrt(n))
        rows.append(row)
    cols = ["n"] + ["alpha=%g" % a for a in args.alpha]
    note = "asymptotic critical values c = K^-1(alpha)/sqrt(n), P(D_n >= c) ~ alpha"
    _emit(out, args.format, cols, rows, args.precision, comments=(note,))


def cmd_bench(args, out):
    engines = list(bench.Engine) if args.engine == "both" else [bench.Engine(args.engine.capitalize())]
    summaries = []
    kw = dict(audit=not args.no_audit, digits=args.digits, workers=args.workers)
    if args.suite in ("sf", "all"):
        summaries += [bench.sweep_sf(e, **kw) for e in engines]
    if args.suite in ("isf", "all"):
        summaries += [bench.sweep_isf(e, **kw) for e in engines]
    if args.format == "csv":
        out.write(bench.to_csv(summaries))
    elif args.format == "json":
        json.dump([{"engine": s.engine.value, "metric": s.metric.value, "mean": s.mean,
                    "std": s.std, "max": s.max, "failure_rate": s.failure_rate,
                    "tol_rate": s.tolerance_exceed_rate, "grid": list(s.grid_spec)}
                   for s in summaries], out, indent=1)
        out.write("\n")
    else:
        out.write(bench.to_table(summaries))


def cmd_oracle_eval(args, out):
    import mpmath

    rows = []
    for x in args.x:
        rows.append([x] + [mpmath.nstr(f(x, args.digits), args.precision, strip_zeros=False)
                           for f in (oracle.oracle_sf, oracle.oracle_cdf, oracle.oracle_pdf)])
    _emit(out, args.format, ("x", "sf", "cdf", "pdf"), rows, args.precision)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--precision", type=int, default=17,
                        help="significant digits printed (default 17)")

    p = _Parser(prog="kslimit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", parents=[common], help="SF, CDF and PDF at x")
    s.add_argument("x", nargs="*", type=_real)
    s.add_argument("--grid", nargs=3, metavar=("START", "STEP", "STOP"))
    s.add_argument("--engine", choices=("improved", "baseline"), default="improved")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("invert", parents=[common], help="quantile from --sf or --cdf")
    s.add_argument("--sf", dest="probs", action=_AppendProb, const="sf", type=_real)
    s.add_argument("--cdf", dest="probs", action=_AppendProb, const="cdf", type=_real)
    s.add_argument("--engine", choices=("improved", "baseline"), default="improved")
    s.set_defaults(func=cmd_invert, probs=None)

    s = sub.add_parser("smirnov", parents=[common], help="one-sided D_n^+ survival function")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("x", nargs="+", type=_real)
    s.set_defaults(func=cmd_smirnov)

    s = sub.add_parser("kstest", parents=[common], help="KS statistics of PIT values")
    s.add_argument("--data", required=True, help="file with one value in [0, 1] per line")
    s.add_argument("--n-override", type=int)
    s.set_defaults(func=cmd_kstest)

    s = sub.add_parser("table", parents=[common], help="asymptotic critical values")
    s.add_argument("--alpha", nargs="+", type=_real, default=[0.1, 0.05, 0.01, 0.001])
    s.add_argument("--n", nargs="+", type=int)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("bench", parents=[common], help="reproduce the term/iteration tables")
    s.add_argument("--suite", choices=("sf", "isf", "all"), default="all")
    s.add_argument("--engine", choices=("improved", "baseline", "both"), default="both")
    s.add_argument("--digits", type=int, default=bench.AUDIT_DIGITS,
                   help="oracle precision for the tolerance audit")
    s.add_argument("--no-audit", action="store_true")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("oracle-eval", parents=[common], help="extended precision reference")
    s.add_argument("x", nargs="+", type=_real)
    s.add_argument("--digits", type=int, default=oracle.DEFAULT_DIGITS)
    s.set_defaults(func=cmd_oracle_eval)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except UsageError as e:
        print("kslimit: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as e:
        print("kslimit: %s" % e, file=sys.stderr)
        return EXIT_DOMAIN
    except NonConvergence as e:
        print("kslimit: %s" % e, file=sys.stderr)
        return EXIT_NOCONV
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
