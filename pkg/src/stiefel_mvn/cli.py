"""Command-line interface.

Three subcommands: ``test`` runs the randomized multivariate-normality
test on a CSV dataset, ``stability`` reports the rejection proportion of
that dataset over repeated seeds, and ``simulate`` reproduces the
article-style Monte Carlo grids.

The exit code reports operational success only; the statistical decision
lives in the output (parse the JSON ``reject`` field in automation).
Identical flags, including the seed, produce identical output bytes.
"""

import argparse
import json
import os
import sys

from .datasets import DatasetFile, load_csv
from .errors import StiefelMvnError
from .harness import (
    SimConfig,
    SimTable,
    repeat_stability,
    run_experiment,
    table1_configs,
    table2_configs,
    table3_configs,
)
from .procedure import TestConfig, TestReport, mvn_test
from .sampling import RngSeedSpec

__all__ = ["main", "build_parser"]

SEED_ENV_VAR = "STIEFEL_MVN_SEED"

_TABLES = {1: table1_configs, 2: table2_configs, 3: table3_configs}
_TABLE_DEFAULT_REPS = {1: 100_000, 2: 10_000, 3: 10_000}


def _resolve_seed(flag_value: int | None) -> RngSeedSpec:
    """Seed from --seed, else the environment, else 0."""
    if flag_value is not None:
        return RngSeedSpec(root_seed=flag_value)
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return RngSeedSpec(root_seed=int(env))
        except ValueError:
            raise StiefelMvnError(
                f"{SEED_ENV_VAR}={env!r} is not an integer seed"
            ) from None
    return RngSeedSpec(root_seed=0)


def _columns_arg(raw: str | None) -> tuple | None:
    if raw is None:
        return None
    return tuple(token.strip() for token in raw.split(",") if token.strip())


def _add_dataset_args(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("dataset", help="CSV file with one observation per row")
    cmd.add_argument(
        "--columns",
        help="comma-separated column names or 0-based indices (default: all)",
    )
    cmd.add_argument(
        "--no-header", action="store_true",
        help="treat the first line as data, not column names",
    )


def _add_test_args(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument(
        "--method", choices=("ad", "sw"), default="sw",
        help="univariate test: ad (Anderson-Darling) or sw (Shapiro-Wilk)",
    )
    cmd.add_argument("--m", type=int, default=1, help="Wishart replicates")
    cmd.add_argument("--alpha", type=float, default=0.05, help="test level")
    cmd.add_argument(
        "--seed", type=int, default=None,
        help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stiefel-mvn",
        description="Exact multivariate-normality test via random matrix "
        "transformation, with Monte Carlo tooling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    test = sub.add_parser("test", help="test one dataset")
    _add_dataset_args(test)
    _add_test_args(test)
    test.add_argument(
        "--repeats", type=int, default=1,
        help="re-run with this many seeds and report the rejection "
        "proportion (default 1)",
    )
    test.add_argument("--json", metavar="PATH", help="also write a JSON report")

    stab = sub.add_parser(
        "stability", help="rejection proportion of one dataset over seeds"
    )
    _add_dataset_args(stab)
    _add_test_args(stab)
    stab.add_argument(
        "--repeats", type=int, default=500,
        help="number of seeds (default 500)",
    )
    stab.add_argument("--json", metavar="PATH", help="also write a JSON report")

    sim = sub.add_parser("simulate", help="run an article-style grid")
    sim.add_argument(
        "--table", type=int, choices=(1, 2, 3), required=True,
        help="1 = Type I error, 2 = power at p=2, 3 = power at p=3",
    )
    sim.add_argument(
        "--reps", type=int, default=None,
        help="replications per cell (default: 100000 for table 1, else 10000)",
    )
    sim.add_argument("--alpha", type=float, default=0.05, help="test level")
    sim.add_argument(
        "--seed", type=int, default=None,
        help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)",
    )
    sim.add_argument("--workers", type=int, default=1, help="worker processes")
    sim.add_argument("--csv", metavar="PATH", help="write the grid as CSV")
    sim.add_argument("--json", metavar="PATH", help="write the grid as JSON")
    return parser


def _load_dataset(args: argparse.Namespace):
    return load_csv(DatasetFile(
        path=args.dataset,
        has_header=not args.no_header,
        columns=_columns_arg(args.columns),
    ))


def _report_json(report: TestReport, extra: dict) -> dict:
    cfg = report.config
    doc = {
        "method": cfg.method,
        "m": cfg.m,
        "alpha": cfg.alpha,
        "seed": cfg.seed.root_seed,
        "n": report.n,
        "p": report.p,
        "statistics": list(report.statistics),
        "p_values": list(report.p_values),
        "min_p": report.min_p,
        "adjusted_p": report.adjusted_p,
        "reject": report.reject,
    }
    doc.update(extra)
    return doc


def cmd_test(args: argparse.Namespace) -> int:
    sample = _load_dataset(args)
    cfg = TestConfig(
        m=args.m, alpha=args.alpha, method=args.method,
        seed=_resolve_seed(args.seed),
    )
    report = mvn_test(sample, cfg)
    for i, (stat, pval) in enumerate(zip(report.statistics, report.p_values)):
        print(f"replicate {i + 1}: statistic={stat:.6f}  p={pval:.6g}")
    print(report.summary())
    extra: dict = {}
    if args.repeats > 1:
        proportion = repeat_stability(sample, cfg, args.repeats)
        print(
            f"rejection proportion over {args.repeats} seeds: {proportion:.4g}"
        )
        extra = {"repeats": args.repeats, "rejection_proportion": proportion}
    else:
        print(
            "note: the decision is seed-dependent (randomized test); use "
            "--repeats or the stability subcommand to gauge stability.",
            file=sys.stderr,
        )
    if args.json:
        with open(args.json, "w") as handle:
            json.dump(_report_json(report, extra), handle, indent=2)
            handle.write("\n")
    return 0


def cmd_stability(args: argparse.Namespace) -> int:
    sample = _load_dataset(args)
    cfg = TestConfig(
        m=args.m, alpha=args.alpha, method=args.method,
        seed=_resolve_seed(args.seed),
    )
    proportion = repeat_stability(sample, cfg, args.repeats)
    print(
        f"rejection proportion over {args.repeats} seeds "
        f"(alpha={cfg.alpha:g}, {cfg.method}, m={cfg.m}): {proportion:.4g}"
    )
    if args.json:
        doc = {
            "method": cfg.method,
            "m": cfg.m,
            "alpha": cfg.alpha,
            "seed": cfg.seed.root_seed,
            "repeats": args.repeats,
            "rejection_proportion": proportion,
        }
        with open(args.json, "w") as handle:
            json.dump(doc, handle, indent=2)
            handle.write("\n")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    reps = args.reps if args.reps is not None else _TABLE_DEFAULT_REPS[args.table]
    seed = _resolve_seed(args.seed)
    # Build (and thereby validate) every cell before any work starts.
    configs = [
        SimConfig(
            model=cfg.model, n_obs=cfg.n_obs, dim=cfg.dim, m=cfg.m,
            alpha=args.alpha, method=cfg.method, replications=reps,
            seed=cfg.seed, workers=args.workers,
        )
        for cfg in _TABLES[args.table](replications=reps, seed=seed)
    ]
    results = []
    for i, cfg in enumerate(configs):
        print(
            f"cell {i + 1}/{len(configs)}: {cfg.model.label()} "
            f"N={cfg.n_obs} p={cfg.dim} m={cfg.m} {cfg.method} "
            f"x{cfg.replications}",
            file=sys.stderr,
        )
        results.append(run_experiment(cfg))
    table = SimTable(results=tuple(results))
    print(table.to_text(), end="")
    if args.csv:
        with open(args.csv, "w") as handle:
            handle.write(table.to_csv())
    if args.json:
        with open(args.json, "w") as handle:
            handle.write(table.to_json())
            handle.write("\n")
    return 0


_COMMANDS = {"test": cmd_test, "stability": cmd_stability, "simulate": cmd_simulate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (StiefelMvnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
