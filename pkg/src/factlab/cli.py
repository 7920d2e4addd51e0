"""``factlab`` command line.

Exit codes: 0 success, 1 a verification suite failed, 2 usage error (bad
arguments, out-of-range inputs, resource limits).  Tables go out as CSV
with a header row; everything else as a single JSON object.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import Decimal, InvalidOperation

from . import __version__
from .asymptotics import THEOREMS, LogScale, max_term_exact, max_term_synthetic, predict
from .combinatorics import bell_csv
from .counts import counts_rows
from .errors import FactlabError, ResourceError
from .moments import FUNCTIONS, RunConfig, kalmar_trend, moment_sum
from .sieve import build_sieve, cached_sieve, dump_sieve, load_sieve, pi_table_csv
from .special import constants_report
from .verify import BENCH_TASKS, SUITES, bench, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def int_arg(text: str) -> int:
    """Integers, also written as 1e7 or 10**7."""
    text = text.strip()
    if "**" in text:
        base, _, exp = text.partition("**")
        return int_arg(base) ** int_arg(exp)
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def int_list_arg(text: str) -> list[int]:
    return [int_arg(part) for part in text.split(",") if part.strip()]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):          # numpy arrays and scalars
        return _jsonable(obj.tolist())
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)                # "inf", "-inf", "nan"
    return obj


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(_jsonable(payload), indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> RunConfig:
    return RunConfig(chunk_size=args.chunk_size, threads=args.threads, fmt=args.format or "json",
                     output=args.output, cache_dir=args.cache_dir)


# -- subcommands ---------------------------------------------------------------------

def cmd_sieve(args) -> int:
    table = None
    if args.cache:
        try:
            table = load_sieve(args.cache)
            if table.limit != args.limit:
                table = None
        except (FactlabError, OSError):
            table = None
    if table is None:
        table = build_sieve(args.limit)
        if args.cache:
            dump_sieve(table, args.cache)
    if args.format == "csv":
        _emit(args, pi_table_csv(table))
        return EXIT_OK
    _emit(args, {
        "limit": table.limit,
        "max_omega": table.max_omega,
        "pi": table.omega_counts(),
        "pi_prime": table.omega_counts(squarefree=True),
        "cache": args.cache,
    })
    return EXIT_OK


def cmd_counts(args) -> int:
    if not 1 <= args.start <= args.stop:
        raise UsageError(f"need 1 <= --from <= --to, got {args.start}, {args.stop}")
    header = ["n", "omega", "f", "g", "F", "G"]
    rows = counts_rows(args.start, args.stop)
    if args.format == "json":
        _emit(args, {"rows": [dict(zip(header, r)) for r in rows]})
    else:
        _emit(args, _csv(header, rows))
    return EXIT_OK


def cmd_moments(args) -> int:
    config = _config(args)
    table = cached_sieve(max(args.limit, 2), config.cache_dir)
    report = moment_sum(args.fn, args.beta, args.limit, table, config, path=args.path)
    _emit(args, report.as_json(timing=args.timing))
    return EXIT_OK


def cmd_pik(args) -> int:
    table = cached_sieve(args.limit, args.cache_dir)
    if args.format == "json":
        _emit(args, {
            "limit": table.limit,
            "pi": table.omega_counts(),
            "pi_prime": table.omega_counts(squarefree=True),
        })
    else:
        _emit(args, pi_table_csv(table))
    return EXIT_OK


def cmd_constants(args) -> int:
    _emit(args, constants_report().as_json())
    return EXIT_OK


def _scale(args) -> LogScale:
    if args.logx is not None:
        return LogScale.from_logx(args.logx)
    if args.log2x is not None:
        return LogScale.from_log2x(args.log2x)
    raise UsageError("give --logx or --log2x")


def cmd_predict(args) -> int:
    scale = _scale(args)
    p = predict(args.theorem, args.beta, scale)
    _emit(args, {
        "theorem": p.theorem,
        "beta": p.beta,
        "logx": scale.logx,
        "log_sum": p.log_sum,
        "components": p.components,
    })
    return EXIT_OK


def cmd_maxterm(args) -> int:
    if args.exact:
        if args.limit is None:
            raise UsageError("--exact needs --limit")
        table = cached_sieve(args.limit, args.cache_dir)
        m = max_term_exact(args.fn, args.beta, table)
        out = {"mode": "exact", "limit": args.limit}
    else:
        scale = _scale(args)
        m = max_term_synthetic(args.fn, args.beta, scale, kmax=args.kmax, C=args.C)
        out = {"mode": "synthetic", "logx": scale.logx, "log2x": scale.log2x, "kmax": args.kmax}
    out.update({
        "fn": m.fn,
        "beta": m.beta,
        "k": m.k,
        "log_value": m.log_value,
        "n_terms": m.n_terms,
        "exact": str(m.exact) if m.exact is not None else None,
    })
    _emit(args, out)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(args.suite, args.limit, _config(args))
    _emit(args, report.as_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_bench(args) -> int:
    _emit(args, bench(args.task, args.size, args.repeats, _config(args)))
    return EXIT_OK


def cmd_kalmar(args) -> int:
    if not args.limits or min(args.limits) < 1:
        raise UsageError("--limits needs positive integers")
    config = _config(args)
    table = cached_sieve(max(2, max(args.limits)), config.cache_dir)
    rows = kalmar_trend(args.limits, table, config)
    if args.format == "csv":
        _emit(args, _csv(["x", "sum_g", "ratio"], ((r.x, r.sum_g, repr(r.ratio)) for r in rows)))
    else:
        _emit(args, {"rows": [{"x": r.x, "sum_g": str(r.sum_g), "ratio": r.ratio} for r in rows]})
    return EXIT_OK


def cmd_bell(args) -> int:
    if args.kmax < 0:
        raise UsageError("--kmax must be nonnegative")
    _emit(args, bell_csv(args.kmax))
    return EXIT_OK


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (capped by FACTLAB_THREADS)")
    common.add_argument("--chunk-size", type=int_arg, default=1 << 20)
    common.add_argument("--cache-dir", default=None, help="directory for cached sieves")
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = _Parser(prog="factlab", description="Factorization counts, moments and their asymptotics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("sieve", cmd_sieve, "build a sieve and print its omega histograms")
    p.add_argument("--limit", type=int_arg, required=True)
    p.add_argument("--cache", default=None, help="sieve file to load, or to write after building")

    p = add("counts", cmd_counts, "f, g, F, G for a range of n")
    p.add_argument("--from", dest="start", type=int_arg, required=True)
    p.add_argument("--to", dest="stop", type=int_arg, required=True)

    p = add("moments", cmd_moments, "sum of fn(n)^beta for n <= limit")
    p.add_argument("--fn", choices=FUNCTIONS, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--limit", type=int_arg, required=True)
    p.add_argument("--path", choices=("histogram", "per-n"), default=None)
    p.add_argument("--timing", action="store_true", help="include elapsed seconds")

    p = add("pik", cmd_pik, "pi(x, k) and pi'(x, k) table")
    p.add_argument("--limit", type=int_arg, required=True)

    add("constants", cmd_constants, "closed-form constants with residuals")

    p = add("predict", cmd_predict, "evaluate a moment predictor")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--logx", type=float, default=None)
    p.add_argument("--log2x", type=float, default=None)

    p = add("maxterm", cmd_maxterm, "largest k-term of the omega decomposition")
    p.add_argument("--fn", choices=("F", "G"), default="F")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--limit", type=int_arg, default=None)
    p.add_argument("--logx", type=float, default=None)
    p.add_argument("--log2x", type=float, default=None)
    p.add_argument("--kmax", type=int_arg, default=10**5)
    p.add_argument("--C", type=float, default=0.0, help="Hardy-Ramanujan shift in the term model")

    p = add("verify", cmd_verify, "run a self-check suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--limit", type=int_arg, default=None)

    p = add("bench", cmd_bench, "time a task")
    p.add_argument("--task", choices=BENCH_TASKS, required=True)
    p.add_argument("--size", type=int_arg, required=True)
    p.add_argument("--repeats", type=int, default=1)

    p = add("kalmar", cmd_kalmar, "sum of g(n) against K x^rho")
    p.add_argument("--limits", type=int_list_arg, required=True)

    p = add("bell", cmd_bell, "Bell and ordered Bell table")
    p.add_argument("--kmax", type=int_arg, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"factlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FactlabError, ValueError, ResourceError) as exc:
        print(f"factlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
