"""Command-line front-end.

Subcommands: estimate, predictive, risk-curve, dominance, threshold,
poisson-limit. Every output is a deterministic function of the flags;
CSV files carry a header row and 17-significant-digit numbers so reruns
are byte-for-byte identical. Exit status: 0 success, 1 validation error,
2 numerical failure (bracket failure, overflow near p_bar -> 1).
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections.abc import Iterable, Sequence

from .binom import BinomialSetup, PriorSpec
from .dominance import (
    BoundUndefinedError,
    dominance_threshold_n1,
    exhaustive_dominance_check,
    max_risk_diff_symmetric_n1,
    standardized_risk_difference,
    thm32_bound,
)
from .estimators import EstimateTable
from .poisson import PoissonConfig, limit_convergence_report
from .predictive import PredictiveTable
from .risk import mc_risk, point_risk

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.17g}"


def _write_csv(out: str | None, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    def dump(handle) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [_fmt(v) if isinstance(v, float) or v is None else str(v) for v in row]
            )

    if out is None:
        dump(sys.stdout)
    else:
        with open(out, "w", newline="") as handle:
            dump(handle)


def _prior_from_args(args: argparse.Namespace) -> PriorSpec:
    return PriorSpec(a=args.a, b=args.b, p_bar=args.p_bar, p_lo=args.p_lo)


def _cmd_estimate(args: argparse.Namespace) -> int:
    prior = _prior_from_args(args)
    table = EstimateTable.build(BinomialSetup(n=args.n), prior)
    rows = [(x, table[x]) for x in range(args.n + 1)]
    if args.mc_samples and args.p is not None:
        est, se = mc_risk(table, args.p, args.mc_samples, args.seed)
        exact = point_risk(table, args.p)
        print(
            f"# exact risk at p={_fmt(args.p)}: {_fmt(exact)}; "
            f"mc ({args.mc_samples} draws, seed {args.seed}): "
            f"{_fmt(est)} +/- {_fmt(se)}"
        )
    _write_csv(args.out, ["x", "estimate"], rows)
    return EXIT_OK


def _cmd_predictive(args: argparse.Namespace) -> int:
    prior = _prior_from_args(args)
    setup = BinomialSetup(n=args.n, l=args.l)
    table = PredictiveTable.build(setup, prior, args.x)
    rows = [(y, table[y]) for y in range(args.l + 1)]
    _write_csv(args.out, ["y", "probability"], rows)
    return EXIT_OK


def _cmd_risk_curve(args: argparse.Namespace) -> int:
    if args.p_bar is None:
        raise ValueError("risk-curve requires --p-bar")
    prior = _prior_from_args(args)
    setup = BinomialSetup(n=args.n)
    unres = EstimateTable.build(setup, PriorSpec(a=args.a, b=args.b))
    trunc = EstimateTable.build(setup, prior)
    lo = args.p_lo if args.p_lo is not None else args.p_bar / args.grid
    grid = [
        lo + (args.p_bar - lo) * i / (args.grid - 1) for i in range(args.grid - 1)
    ] + [args.p_bar]
    rows = []
    for p in grid:
        bound: float | None
        if args.p_lo is None:
            try:
                bound = thm32_bound(p, args.n, args.a, args.b, args.p_bar)
            except BoundUndefinedError:
                bound = None
        else:
            bound = None
        rows.append(
            (p, point_risk(unres, p), point_risk(trunc, p), bound)
        )
    _write_csv(
        args.out,
        ["p", "risk_unrestricted", "risk_truncated", "thm32_bound"],
        rows,
    )
    return EXIT_OK


def _cmd_dominance(args: argparse.Namespace) -> int:
    if args.p_bar is None:
        raise ValueError("dominance requires --p-bar")
    report = exhaustive_dominance_check(
        args.n, args.a, args.b, args.p_bar, p_lo=args.p_lo, grid_size=args.grid
    )
    for name, flag in sorted(report.condition_flags.items()):
        print(f"{name}: {'n/a' if flag is None else flag}")
    print(f"verdict: {report.grid_verdict}")
    print(
        f"worst p: {_fmt(report.worst_p)} "
        f"(risk difference {_fmt(report.worst_difference)})"
    )
    if args.out is not None:
        rows = []
        for i, p in enumerate(report.p_grid):
            bound = (
                report.thm32_bound_curve[i]
                if report.thm32_bound_curve is not None
                else None
            )
            std = (
                report.standardized_diff_curve[i]
                if report.standardized_diff_curve is not None
                else None
            )
            rows.append((p, report.risk_difference[i], std, bound))
        _write_csv(
            args.out,
            ["p", "risk_difference", "standardized_difference", "thm32_bound"],
            rows,
        )
    return EXIT_OK


def _cmd_threshold(args: argparse.Namespace) -> int:
    root = dominance_threshold_n1(args.a)
    grid = [
        0.5 + (0.5 - 1e-4) * (i + 1) / args.grid for i in range(args.grid - 1)
    ]
    for p_bar in grid:
        print(f"p_bar={_fmt(p_bar)} max_risk_diff={_fmt(max_risk_diff_symmetric_n1(args.a, p_bar))}")
    print(f"threshold: {_fmt(root)}")
    return EXIT_OK


def _cmd_poisson_limit(args: argparse.Namespace) -> int:
    config = PoissonConfig(
        r=args.r, s=args.s, a=args.a, lambda_bar=args.lambda_bar
    )
    report = limit_convergence_report(
        args.k_grid, args.lam, config, args.x_tilde
    )
    rows = list(
        zip(
            report.K_grid,
            report.estimator_errors,
            report.predictive_errors,
            report.risk_errors,
        )
    )
    _write_csv(
        args.out,
        ["K", "estimator_error", "predictive_error", "risk_error"],
        rows,
    )
    print(f"# monotone decay: {report.monotone_decay()}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binrisk",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, need_n: bool = True) -> None:
        if need_n:
            p.add_argument("--n", type=int, required=True, help="current trial count")
        p.add_argument("--a", type=float, default=1.0, help="beta exponent on p")
        p.add_argument("--b", type=float, default=1.0, help="beta exponent on 1-p")
        p.add_argument("--p-bar", type=float, default=None, help="upper restriction")
        p.add_argument("--p-lo", type=float, default=None, help="lower restriction")
        p.add_argument("--out", type=str, default=None, help="CSV output path")

    p_est = sub.add_parser("estimate", help="posterior-mean table over x")
    add_common(p_est)
    p_est.add_argument("--p", type=float, default=None, help="risk evaluation point")
    p_est.add_argument("--mc-samples", type=int, default=0)
    p_est.add_argument("--seed", type=int, default=0)
    p_est.set_defaults(func=_cmd_estimate)

    p_pred = sub.add_parser("predictive", help="Bayesian predictive density")
    add_common(p_pred)
    p_pred.add_argument("--l", type=int, default=1, help="future trial count")
    p_pred.add_argument("--x", type=int, required=True, help="observed count")
    p_pred.set_defaults(func=_cmd_predictive)

    p_curve = sub.add_parser("risk-curve", help="exact risk curves plus the bound")
    add_common(p_curve)
    p_curve.add_argument("--grid", type=int, default=512)
    p_curve.set_defaults(func=_cmd_risk_curve)

    p_dom = sub.add_parser("dominance", help="condition flags and grid verdict")
    add_common(p_dom)
    p_dom.add_argument("--grid", type=int, default=512)
    p_dom.set_defaults(func=_cmd_dominance)

    p_thr = sub.add_parser(
        "threshold", help="n=1 symmetric max risk difference and its root"
    )
    p_thr.add_argument("--a", type=float, required=True)
    p_thr.add_argument("--grid", type=int, default=50)
    p_thr.set_defaults(func=_cmd_threshold)

    p_po = sub.add_parser(
        "poisson-limit", help="binomial-to-Poisson convergence errors"
    )
    p_po.add_argument("--a", type=float, default=1.0)
    p_po.add_argument("--r", type=float, default=1.0)
    p_po.add_argument("--s", type=float, default=1.0)
    p_po.add_argument("--lam", type=float, default=0.5)
    p_po.add_argument("--lambda-bar", type=float, default=None)
    p_po.add_argument("--x-tilde", type=int, default=0)
    p_po.add_argument(
        "--k-grid",
        type=float,
        nargs="+",
        default=[10.0, 100.0, 1000.0, 10000.0],
    )
    p_po.add_argument("--out", type=str, default=None)
    p_po.set_defaults(func=_cmd_poisson_limit)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ArithmeticError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
