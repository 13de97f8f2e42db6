"""Command-line interface: ``sharpebound <command> ...``.

Exit codes: 0 success, 2 input error, 3 domain or divergence error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import anomaly, frontier, metrics, oracle, tables
from .errors import DomainError, FrontierDivergence, InputError, SharpeBoundError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3

ANOMALY_SHARPE = 1.0


def _fmt(x: Optional[float]) -> str:
    return "undefined" if x is None else f"{x:.6f}"


def _kind(s: str) -> str:
    return s.replace("-", "_")


def _report_lines(rep: metrics.RatioReport) -> List[str]:
    lines = [
        f"n                   {rep.n}",
        f"convention          1/{'N' if rep.convention == 'n' else '(N-1)'}",
        f"mean                {_fmt(rep.mean)}",
        f"volatility          {_fmt(rep.volatility)}",
        f"downside_deviation  {_fmt(rep.downside_deviation)}",
        f"sharpe              {_fmt(rep.sharpe)}",
        f"sortino             {_fmt(rep.sortino)}",
        f"wealth_multiple     {_fmt(rep.wealth_multiple)}",
    ]
    if rep.sharpe is not None and rep.sharpe > ANOMALY_SHARPE and rep.wealth_multiple < 1.0:
        lines.append(
            f"WARNING: Sharpe ratio {rep.sharpe:.6f} exceeds {ANOMALY_SHARPE:g} "
            f"although the sequence loses money (wealth multiple {rep.wealth_multiple:.6f})"
        )
    return lines


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _save_figure(fn, *args, path: str) -> None:
    try:
        fn(*args, path)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None
    print(f"figure written to {path}")


def cmd_ratio(args) -> int:
    series = metrics.read_returns_csv(args.csv_path)
    rep = metrics.analyze(series, convention=args.convention)
    print("\n".join(_report_lines(rep)))
    return EXIT_OK


def cmd_frontier(args) -> int:
    pt = frontier.frontier_value(args.B, args.ratio, _kind(args.bound), convention=args.convention)
    print(f"function    {tables_name(pt.ratio_kind, pt.bound_kind)}")
    print(f"B           {pt.B:g}")
    print(f"value       {pt.value:.6f}")
    print(f"c_star      {pt.c_star:.6f}")
    print(f"alpha_star  {pt.alpha_star:.6f}")
    return EXIT_OK


def tables_name(ratio_kind: str, bound_kind: str) -> str:
    for name, kinds in tables.FUNCTIONS.items():
        if kinds == (ratio_kind, bound_kind):
            return name
    raise KeyError((ratio_kind, bound_kind))


def cmd_table(args) -> int:
    rows = tables.reproduce(args.which, convention=args.convention)
    print(tables.format_table(rows))
    if args.csv:
        recs = tables.rows_as_dicts(rows)
        fh, close = _open_out(args.csv)
        try:
            w = csv.DictWriter(fh, fieldnames=list(recs[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(recs)
        finally:
            if close:
                fh.close()
    if args.figure:
        from . import plotting

        _save_figure(plotting.plot_table_check, rows, path=args.figure)
    bad = [r for r in rows if not r.ok]
    if bad:
        print(f"{len(bad)} row(s) outside tolerance", file=sys.stderr)
        return 1
    print(f"all {len(rows)} rows within tolerance")
    return EXIT_OK


def _curve_panels(args) -> List[frontier.FrontierCurve]:
    if args.B_from is None and args.B_to is None:
        specs = frontier.FIGURE_PANELS
    elif args.B_from is None or args.B_to is None:
        raise InputError("--from and --to must be given together")
    else:
        specs = ((args.B_from, args.B_to, args.points),)
    for lo, hi, n in specs:
        if not (0.0 < lo <= hi < 1.0):
            raise InputError(f"curve range must lie inside (0, 1), got [{lo}, {hi}]")
    return [
        frontier.frontier_curve(lo, hi, n, args.ratio, _kind(args.bound), convention=args.convention)
        for lo, hi, n in specs
    ]


def cmd_curve(args) -> int:
    panels = _curve_panels(args)
    points = []
    for curve in panels:
        for p in curve:
            if not points or p.B > points[-1].B:
                points.append(p)
    if args.format == "svg":
        if not args.output or args.output == "-":
            raise InputError("--output is required for svg")
        from . import plotting

        _save_figure(plotting.plot_curves, panels, path=args.output)
        return EXIT_OK
    fh, close = _open_out(args.output)
    try:
        if args.format == "csv":
            fh.write("B,value,c_star,alpha_star\n")
            for p in points:
                fh.write(f"{p.B!r},{p.value!r},{p.c_star!r},{p.alpha_star!r}\n")
        else:
            fh.write(f"{'B':>10} {'value':>10} {'c_star':>14} {'alpha_star':>10}\n")
            for p in points:
                fh.write(f"{p.B:10.6f} {p.value:10.6f} {p.c_star:14.6f} {p.alpha_star:10.6f}\n")
    finally:
        if close:
            fh.close()
    if args.figure:
        from . import plotting

        _save_figure(plotting.plot_curves, panels, path=args.figure)
    return EXIT_OK


def cmd_oracle(args) -> int:
    ratio, bound = args.ratio, _kind(args.bound)
    if args.method == "brute":
        levels = None
        if args.levels != oracle.DEFAULT_LEVELS or args.c_max is not None:
            levels = oracle.default_levels(args.B, ratio, bound, args.levels, args.c_max)
        res = oracle.brute_force_sup(args.B, args.N, levels, ratio, bound, convention=args.convention)
    elif args.method == "random":
        res = oracle.random_feasible_sup(
            args.B, args.N, args.samples, ratio, bound,
            seed=args.seed, c_max=args.c_max, convention=args.convention,
        )
    elif args.method == "two-level":
        res = oracle.two_level_discrete(args.B, args.N, ratio, bound, convention=args.convention)
    else:
        res = oracle.jackpot_result(args.B, args.N, convention=args.convention)
    print(f"function         {tables_name(res.ratio_kind, res.bound_kind)}")
    print(f"B                {res.B:g}")
    print(f"N                {res.N}")
    print(f"search           {res.grid_spec}")
    print(f"best_value       {res.best_value:.6f}")
    print(f"continuum_value  {res.continuum_value:.6f}")
    print(f"gap              {res.gap:.6f}")
    if res.N <= 12:
        print("best_series      " + ", ".join(f"{x:.6f}" for x in res.best_series.returns))
    if res.gap < -1e-9:
        print("NOTE: the finite sequence beats the two-level continuum value")
    return EXIT_OK


def cmd_demo(args) -> int:
    if args.kind == "det":
        x = anomaly.deterministic_returns(args.k, args.gain)
        rep = metrics.analyze(x, convention=args.convention)
        print(f"deterministic sequence: {args.k - 1} x {args.gain:g}, then -1")
        print("\n".join(_report_lines(rep)))
        if args.returns_csv:
            _write_returns(args.returns_csv, x)
        return EXIT_OK

    spec = anomaly.IidSpec(k=args.k, N=args.N, gain=args.gain, seed=args.seed)
    traj = anomaly.simulate_iid(spec, convention=args.convention)
    x = anomaly.iid_returns(spec)
    rep = metrics.analyze(x, convention=args.convention)
    print(f"i.i.d. returns: {args.gain:g} w.p. {args.k - 1}/{args.k}, -1 w.p. 1/{args.k}; seed {args.seed}")
    print(f"population_sharpe   {anomaly.population_sharpe_iid(spec):.6f}")
    print("\n".join(_report_lines(rep)))
    if args.csv:
        fh, close = _open_out(args.csv)
        try:
            fh.write("n,sharpe,sortino,wealth\n")
            for p in traj:
                sh = "" if p.sharpe is None else repr(p.sharpe)
                so = "" if p.sortino is None else repr(p.sortino)
                fh.write(f"{p.n},{sh},{so},{p.wealth!r}\n")
        finally:
            if close:
                fh.close()
    if args.returns_csv:
        _write_returns(args.returns_csv, x)
    if args.figure:
        from . import plotting

        _save_figure(plotting.plot_trajectory, traj, path=args.figure)
    return EXIT_OK


def _write_returns(path: str, x) -> None:
    try:
        metrics.write_returns_csv(path, x)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--convention", choices=metrics.CONVENTIONS, default=argparse.SUPPRESS,
        help="deviation normalization: 1/N (n, default) or 1/(N-1) (n-1)",
    )
    kinds = argparse.ArgumentParser(add_help=False)
    kinds.add_argument("--ratio", choices=frontier.RATIO_KINDS, default="sharpe")
    kinds.add_argument(
        "--bound", choices=["one_sided", "two_sided", "one-sided", "two-sided"], default="one_sided",
        help="returns in [-B, inf) (one_sided) or [-B, B] (two_sided)",
    )

    p = argparse.ArgumentParser(
        prog="sharpebound",
        description="Best achievable Sharpe and Sortino ratios of return sequences that lose money.",
    )
    p.add_argument("--convention", choices=metrics.CONVENTIONS, default="n",
                   help="deviation normalization: 1/N (n, default) or 1/(N-1) (n-1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ratio", parents=[common], help="ratios of a return series read from CSV")
    s.add_argument("csv_path", help="CSV with a single 'return' column")
    s.set_defaults(func=cmd_ratio)

    s = sub.add_parser("frontier", parents=[common, kinds], help="supremum for one bound B")
    s.add_argument("B", type=float)
    s.set_defaults(func=cmd_frontier)

    s = sub.add_parser("table", parents=[common], help="recompute a published table")
    s.add_argument("which", choices=sorted(tables.TABLES))
    s.add_argument("--csv", help="also write the rows as CSV")
    s.add_argument("--figure", help="plot computed vs published values to this file")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("curve", parents=[common, kinds], help="frontier curve as CSV, text or SVG")
    s.add_argument("--from", dest="B_from", type=float)
    s.add_argument("--to", dest="B_to", type=float)
    s.add_argument("--points", type=_positive_int, default=200)
    s.add_argument("--format", choices=["csv", "svg", "text"], default="csv")
    s.add_argument("--output", "-o", help="output file (stdout for csv/text if omitted)")
    s.add_argument("--figure", help="additionally render the curve to this image file")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("oracle", parents=[common, kinds], help="finite-N check against the frontier")
    s.add_argument("B", type=float)
    s.add_argument("N", type=int)
    s.add_argument("--method", choices=["brute", "random", "two-level", "jackpot"], default="brute")
    s.add_argument("--levels", type=_positive_int, default=oracle.DEFAULT_LEVELS)
    s.add_argument("--c-max", type=float, default=None)
    s.add_argument("--samples", type=_positive_int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("demo", parents=[common], help="money-losing sequences with a high Sharpe ratio")
    demo = s.add_subparsers(dest="kind", required=True)
    d = demo.add_parser("det", parents=[common], help="k-1 gains then one total loss")
    d.add_argument("k", type=int)
    d.add_argument("--gain", type=float, default=anomaly.DEFAULT_GAIN)
    d.add_argument("--returns-csv", help="write the return series to this CSV")
    d.set_defaults(func=cmd_demo)
    d = demo.add_parser("iid", parents=[common], help="i.i.d. returns with total-loss probability 1/k")
    d.add_argument("k", type=int)
    d.add_argument("gain", type=float)
    d.add_argument("N", type=int)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--csv", help="write the trajectory (n,sharpe,sortino,wealth) to this CSV")
    d.add_argument("--returns-csv", help="write the simulated returns to this CSV")
    d.add_argument("--figure", help="plot the running ratios to this image file")
    d.set_defaults(func=cmd_demo)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FrontierDivergence as exc:
        print(f"sharpebound: error: {exc}; the supremum diverges", file=sys.stderr)
        return EXIT_DOMAIN
    except InputError as exc:
        print(f"sharpebound: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"sharpebound: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SharpeBoundError as exc:
        print(f"sharpebound: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
