"""Command line entry-point for relativity_lab scenarios and audits."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from relativity_lab.audits import (
    random_grid,
    run_compose,
    run_equivalence,
    run_group_audit,
    run_kappa_sweep,
    run_rod,
    run_roundtrip,
)
from relativity_lab.config import BASIS_CHOICES, CONVENTION_CHOICES, ScenarioConfig, load_scenario_config
from relativity_lab.errors import RelativityLabError
from relativity_lab.grids import load_grid
from relativity_lab.lorentz import Velocity
from relativity_lab.reports import Report, render, write_report

logger = logging.getLogger("relativity_lab.cli")


def velocity_arg(text: str) -> float:
    try:
        return Velocity(float(text)).epsilon
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid velocity {text!r}: |eps| must be < 1") from exc


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from exc
    if not value > 0.0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"{text!r} must be a positive finite number")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be at least 1")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be a non-negative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=velocity_arg, default=None, help="Velocity ratio v/c of K' relative to K.")
    common.add_argument("--length", type=positive_float, default=None, help="Rod rest length L (default 1.0).")
    common.add_argument("--c", type=positive_float, default=None, help="Speed of light for reported times.")
    common.add_argument("--seed", type=non_negative_int, default=None, help="Seed for randomized audits.")
    common.add_argument("--tolerance", type=positive_float, default=None, help="Assertion tolerance.")
    common.add_argument("--convention", choices=CONVENTION_CHOICES, default=None)
    common.add_argument("--basis", choices=BASIS_CHOICES, default=None)
    common.add_argument("--format", choices=("text", "json"), default="text", help="Report format.")
    common.add_argument("--out", default=None, help="Output path (CSV for kappa-sweep, report otherwise).")
    common.add_argument("--verbose", action="store_true", help="Log computation details to stderr.")

    parser = argparse.ArgumentParser(description="Relativistic kinematics under two synchronization conventions.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    roundtrip = subparsers.add_parser("roundtrip", parents=[common], help="A -> B -> A light exchange report.")
    roundtrip.add_argument(
        "--rigid-rod",
        action="store_true",
        help="Keep the rod uncontracted in the ether frame and report the second-order anomaly.",
    )

    sweep = subparsers.add_parser("kappa-sweep", parents=[common], help="Reichenbach kappa over a velocity grid.")
    sweep.add_argument("--from", dest="sweep_from", type=velocity_arg, required=True)
    sweep.add_argument("--to", dest="sweep_to", type=velocity_arg, required=True)
    sweep.add_argument("--step", type=positive_float, required=True)

    group = subparsers.add_parser("group-audit", parents=[common], help="Group-law property batteries.")
    group.add_argument("--samples", type=positive_int, default=10_000)

    equivalence = subparsers.add_parser(
        "equivalence", parents=[common], help="Compare both conventions' observables over a grid."
    )
    source = equivalence.add_mutually_exclusive_group()
    source.add_argument("--grid", default=None, help="YAML file with a 'points' list of {length, eps}.")
    source.add_argument("--points", type=positive_int, default=None, help="Number of seeded random grid points.")

    subparsers.add_parser("rod", parents=[common], help="Rod length measurements and reciprocity.")

    compose = subparsers.add_parser("compose", parents=[common], help="Compose two boosts.")
    compose.add_argument("--eps2", type=velocity_arg, required=True, help="Velocity of the second boost.")
    compose.add_argument("--scale", type=positive_float, default=1.0, help="Scale l of the first boost.")
    compose.add_argument("--scale2", type=positive_float, default=1.0, help="Scale l of the second boost.")

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "kappa-sweep":
        if args.out is None:
            parser.error("kappa-sweep requires --out <path> for the CSV file.")
        if args.sweep_from > args.sweep_to:
            parser.error("--from must not exceed --to.")
    return args


def run_command(args: argparse.Namespace, config: ScenarioConfig) -> Report:
    if args.command == "roundtrip":
        return run_roundtrip(config, contracted=not args.rigid_rod)
    if args.command == "kappa-sweep":
        return run_kappa_sweep(config, args.sweep_from, args.sweep_to, args.step, args.out)
    if args.command == "group-audit":
        return run_group_audit(config, args.samples)
    if args.command == "equivalence":
        if args.grid:
            points = load_grid(args.grid)
        elif args.points:
            points = random_grid(args.points, config.seed)
        else:
            points = None
        return run_equivalence(config, points)
    if args.command == "rod":
        return run_rod(config)
    if args.command == "compose":
        return run_compose(config, args.eps2, args.scale, args.scale2)
    raise RelativityLabError(f"Unknown command {args.command!r}.")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        config, source = load_scenario_config(
            length=args.length,
            eps=args.eps,
            convention=args.convention,
            basis=args.basis,
            c=args.c,
            seed=args.seed,
            tolerance=args.tolerance,
        )
        logger.debug("Configuration %s resolved with sources %s", config.as_dict(), source.__dict__)
        report = run_command(args, config)
        output = render(report, args.format)
        if args.out and args.command != "kappa-sweep":
            write_report(report, args.out, args.format)
    except (RelativityLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    sys.stdout.write(output)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
