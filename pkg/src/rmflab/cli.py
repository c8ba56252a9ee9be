"""Command-line entry point.

One subcommand per experiment kind; --config loads a JSON document and any
flag given on the command line overrides it.  Exit codes: 0 success,
2 config error, 3 budget/resource error, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BudgetError, ConfigError, NumericalError, RmflabError
from .experiments import ExperimentConfig, run_experiment
from .reporting import emit_outputs

_SUBCOMMANDS = {
    "sup": "supremum scan of the sampled polynomial over |t| <= N^C",
    "moment": "Monte Carlo moment vs the exact expectation",
    "variance": "sample variance of the restricted moment vs its comparator",
    "contrast": "paired multiplicative vs independent-coefficient scans",
    "divisor-report": "exact divisor sums against their comparators",
    "construction": "coprime-product family cardinalities and bounds",
    "bohr": "torus-lift identity check at the conjugate phase point",
}


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="FILE",
                     help="JSON config; flags override its keys")
    sub.add_argument("--N", type=int, dest="N")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--replicates", type=int)
    sub.add_argument("--threads", type=int)
    sub.add_argument("--out-dir", dest="out_dir")
    sub.add_argument("--format", dest="formats",
                     help="comma-separated subset of csv,json,svg")
    sub.add_argument("--k")
    sub.add_argument("--alpha", type=float)
    sub.add_argument("--T", type=float, dest="T")
    sub.add_argument("--C", type=float, dest="c0",
                     help="constant C exponent (c_mode=constant)")
    sub.add_argument("--c-mode", dest="c_mode", choices=("constant", "paper"))
    sub.add_argument("--epsilon", type=float)
    sub.add_argument("--tol", type=float)
    sub.add_argument("--point-budget", type=int, dest="point_budget")
    sub.add_argument("--tuple-budget", type=int, dest="tuple_budget")
    sub.add_argument("--allow-partial", action="store_const", const=True,
                     dest="allow_partial")
    sub.add_argument("--no-refine", action="store_const", const=False,
                     dest="refine")
    sub.add_argument("--n-sweep", dest="n_sweep",
                     help="comma-separated N values for a sweep")
    sub.add_argument("--plot-statistic", dest="plot_statistic",
                     help="dotted summary path plotted vs N (e.g. statUpper.mean)")
    sub.add_argument("--stem", help="output file stem (default: kind)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmflab",
        description="experiments on Dirichlet polynomials with random "
                    "multiplicative coefficients")
    subs = parser.add_subparsers(dest="kind", required=True)
    for name, help_text in _SUBCOMMANDS.items():
        sub = subs.add_parser(name, help=help_text)
        _add_common(sub)
    return parser


def _parse_k(raw):
    if raw is None or raw == "paper":
        return raw
    return int(raw)


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {args.config} is not valid JSON: {exc}")
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    data["kind"] = args.kind
    overrides = {
        "N": args.N, "seed": args.seed, "replicates": args.replicates,
        "threads": args.threads, "out_dir": args.out_dir,
        "alpha": args.alpha, "T": args.T, "c0": args.c0,
        "c_mode": args.c_mode, "epsilon": args.epsilon, "tol": args.tol,
        "point_budget": args.point_budget, "tuple_budget": args.tuple_budget,
        "allow_partial": args.allow_partial, "refine": args.refine,
        "plot_statistic": args.plot_statistic,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if args.k is not None:
        data["k"] = _parse_k(args.k)
    if args.formats is not None:
        data["formats"] = tuple(f for f in args.formats.split(",") if f)
    if args.n_sweep is not None:
        try:
            data["n_sweep"] = tuple(int(x) for x in args.n_sweep.split(",") if x)
        except ValueError:
            raise ConfigError(f"--n-sweep must be integers, got {args.n_sweep!r}")
    try:
        return ExperimentConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        report = run_experiment(cfg)
        written = emit_outputs(report, cfg.out_dir, cfg.formats,
                               stem=args.stem)
        for fmt, path in written.items():
            print(f"{fmt}: {path}")
        for key, value in report.summary.items():
            print(f"{key}: {value}")
        print(f"wall clock: {report.wall_clock:.3f}s", file=sys.stderr)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 4
    except RmflabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
