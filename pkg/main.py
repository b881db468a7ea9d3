#!/usr/bin/env python3
"""
Adiabatic sweep simulator - command-line entry point.

Subcommands: gap, evolve, scan, optimize-alpha. Results go to CSV files; logs
go to stderr and the rotating log file.
"""
import argparse
import asyncio
import logging
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np
from dotenv import dotenv_values
from pydantic import ValidationError

from adiasweep.config import settings
from adiasweep.exceptions import ConfigurationError, NumericalError
from adiasweep.logging_config import setup_logging
from adiasweep.models import DEFAULT_PARAMS, HamiltonianModel, build_model
from adiasweep.schemas.analysis import ScanSpec, default_alpha_grid
from adiasweep.schemas.evolution import EvolutionSpec
from adiasweep.schemas.schedule import Schedule, ScheduleKind
from adiasweep.services.analysis import (
    DEFAULT_SCHEDULES,
    ScanService,
    crossing_order,
    crossing_time,
    default_t_grid,
)
from adiasweep.services.evolution import evolve, gap_curve, instantaneous_samples, minimal_gap
from adiasweep.services.export_service import ExportService, fmt

logger = logging.getLogger("adiasweep.cli")

COMMANDS = ("gap", "evolve", "scan", "optimize-alpha")

# Schedule and total time used when none are given on the command line
MODEL_DEFAULTS = {
    "lz": {"schedule": ScheduleKind.LINEAR_LZ, "T": 10.0},
    "aqc1": {"schedule": ScheduleKind.LINEAR, "T": 0.2},
    "factor21": {"schedule": ScheduleKind.LINEAR, "T": 0.05},
}
DEFAULT_ALPHA = 1.0
DEFAULT_RECORD_EVERY = 200

EXIT_OK = 0
EXIT_BAD_ARGUMENTS = 1
EXIT_NUMERICAL = 2

APPEND_OPTIONS = {"--schedule", "--alpha"}
FLAG_OPTIONS = {"--no-optimize", "--debug"}


class CliArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; 2 is reserved for numerical failures here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_ARGUMENTS, f"{self.prog}: error: {message}\n")


def parse_grid(text: str, log: bool = False) -> List[float]:
    """'start:stop:count' into a linearly (or logarithmically) spaced grid."""
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:count, got '{text}'")
    if count < 1 or not np.isfinite(start) or not np.isfinite(stop):
        raise argparse.ArgumentTypeError(f"invalid grid '{text}'")
    if log:
        if start <= 0 or stop <= 0:
            raise argparse.ArgumentTypeError(f"log grid needs positive bounds, got '{text}'")
        return np.geomspace(start, stop, count).tolist()
    return np.linspace(start, stop, count).tolist()


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got '{text}'")
    if not np.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got '{text}'")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{text}'")
    return value


def build_parser() -> CliArgumentParser:
    common = CliArgumentParser(add_help=False)
    common.add_argument("--model", choices=sorted(DEFAULT_PARAMS), default="aqc1")
    common.add_argument("--w0", type=positive_float, help="LZ sweep amplitude omega0")
    common.add_argument("--wx", type=positive_float, help="Transverse splitting omega_x")
    common.add_argument("--wz", type=positive_float, help="AQC1 final splitting omega_z")
    common.add_argument("--g", type=positive_float, help="Factor21 transverse field g")
    common.add_argument(
        "--schedule",
        action="append",
        choices=[kind.value for kind in ScheduleKind],
        help="Schedule kind; repeat to compare several in a scan",
    )
    common.add_argument(
        "--alpha",
        action="append",
        type=positive_float,
        help="Exponential-like curvature; repeat for several fixed-alpha scan curves",
    )
    common.add_argument("--T", type=positive_float, help="Total evolution time")
    common.add_argument("--T-grid", type=parse_grid, help="start:stop:count")
    common.add_argument(
        "--alpha-grid",
        type=lambda text: parse_grid(text, log=True),
        help="start:stop:count, log-spaced",
    )
    common.add_argument("--points", type=positive_int, help="Gap grid points")
    common.add_argument("--n-steps", type=positive_int, help="Propagator steps per evolution")
    common.add_argument("--record-every", type=int, default=DEFAULT_RECORD_EVERY)
    common.add_argument("--out", help="Output CSV path (default <command>.csv)")
    common.add_argument("--config", help="key=value file of flag defaults")
    common.add_argument("--no-optimize", action="store_true", help="Scan fixed alphas only")
    common.add_argument("--target", type=float, help="Report per-schedule crossing times")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    parser = CliArgumentParser(
        prog="adiasweep",
        description="Adiabatic sweep simulator: gap scans, evolutions and schedule comparisons",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common])
    return parser


def config_tokens(path: str, cli_tokens: Sequence[str]) -> List[str]:
    """Flag tokens from a key=value file; repeatable options given on the CLI are dropped."""
    values: Dict[str, Optional[str]] = dotenv_values(path)
    if not values:
        raise ConfigurationError(f"Config file {path} is missing or empty")

    given = {token.split("=", 1)[0] for token in cli_tokens if token.startswith("--")}
    tokens: List[str] = []
    for key, value in values.items():
        name = key.strip().lstrip("-").replace("_", "-")
        if name.lower() == "t-grid":
            name = "T-grid"
        flag = f"--{name}"
        if flag == "--config":
            continue
        if flag in APPEND_OPTIONS and flag in given:
            continue
        if flag in FLAG_OPTIONS:
            if (value or "").strip().lower() in ("1", "true", "yes", "on"):
                tokens.append(flag)
            continue
        for item in (value or "").split(",") if flag in APPEND_OPTIONS else [value or ""]:
            tokens.extend([flag, item.strip()])
    return tokens


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config and argv and argv[0] in COMMANDS:
        try:
            # file values first, so later command-line values win
            argv = [argv[0]] + config_tokens(known.config, argv[1:]) + argv[1:]
        except ConfigurationError as e:
            parser.error(str(e))
    return parser.parse_args(argv)


def model_from_args(args: argparse.Namespace) -> HamiltonianModel:
    return build_model(args.model, omega0=args.w0, omega_x=args.wx, omega_z=args.wz, g=args.g)


def schedule_from_args(args: argparse.Namespace, model: HamiltonianModel) -> Schedule:
    defaults = MODEL_DEFAULTS[model.kind]
    kind = ScheduleKind(args.schedule[0]) if args.schedule else defaults["schedule"]
    T = args.T if args.T is not None else defaults["T"]
    if kind is ScheduleKind.EXP_LIKE:
        alpha = args.alpha[0] if args.alpha else DEFAULT_ALPHA
        return Schedule(kind=kind, T=T, alpha=alpha, s_c=model.critical_point())
    return Schedule(kind=kind, T=T)


def cmd_gap(args: argparse.Namespace, exporter: ExportService) -> int:
    model = model_from_args(args)
    points = args.points or settings.GAP_GRID_POINTS
    s_grid = np.linspace(0.0, 1.0, points)
    curve = gap_curve(model, s_grid, normalized=True)
    if points >= 3:
        s_c, gap_min = minimal_gap(model, curve=curve)
    else:
        s_c, gap_min = minimal_gap(model, points=3)
    exporter.write_gap_csv(args.out, curve, s_c, gap_min)
    logger.info(f"Minimal gap {gap_min:.6g} at s_c={s_c:.6g}", extra={"model": model.model_id})
    return EXIT_OK


def cmd_evolve(args: argparse.Namespace, exporter: ExportService) -> int:
    model = model_from_args(args)
    schedule = schedule_from_args(args, model)
    spec = EvolutionSpec(
        model=model,
        schedule=schedule,
        n_steps=args.n_steps or settings.N_STEPS,
        record_every=args.record_every,
    )
    trajectory = evolve(spec)
    exporter.write_trajectory_csv(args.out, instantaneous_samples(model, trajectory))
    print(f"F={fmt(trajectory.final_fidelity)}")
    return EXIT_OK


def cmd_scan(args: argparse.Namespace, exporter: ExportService) -> int:
    model = model_from_args(args)
    schedules = DEFAULT_SCHEDULES[model.kind]
    if args.schedule:
        schedules = [ScheduleKind(s) for s in args.schedule]
    spec = ScanSpec(
        model=model,
        schedules=schedules,
        T_values=args.T_grid or ([args.T] if args.T is not None else default_t_grid(model)),
        alpha_grid=args.alpha_grid or default_alpha_grid(),
        fixed_alphas=args.alpha or [],
        optimize_alpha=not args.no_optimize,
        n_steps=args.n_steps or settings.N_STEPS,
    )
    records = asyncio.run(ScanService().scan_fidelity(spec))
    exporter.write_scan_csv(args.out, records)

    if args.target is not None:
        crossings = crossing_time(records, args.target)
        for curve, T in crossings.items():
            print(f"{curve} T_cross={fmt(T) if T is not None else 'none'}")
        print(f"crossing_order={crossing_order(crossings).value}")
    return EXIT_OK


def cmd_optimize_alpha(args: argparse.Namespace, exporter: ExportService) -> int:
    model = model_from_args(args)
    T_values = args.T_grid or ([args.T] if args.T is not None else default_t_grid(model))
    optima = asyncio.run(
        ScanService().optimize_alpha_scan(
            model,
            T_values,
            args.alpha_grid or default_alpha_grid(),
            n_steps=args.n_steps or settings.N_STEPS,
        )
    )
    exporter.write_alpha_csv(args.out, optima)
    return EXIT_OK


HANDLERS = {
    "gap": cmd_gap,
    "evolve": cmd_evolve,
    "scan": cmd_scan,
    "optimize-alpha": cmd_optimize_alpha,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    setup_logging(level=logging.DEBUG if args.debug else settings.LOG_LEVEL)
    if args.out is None:
        args.out = f"{args.command}.csv"

    try:
        return HANDLERS[args.command](args, ExportService())
    except (ValidationError, ConfigurationError) as e:
        logger.error(f"Invalid arguments: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_ARGUMENTS
    except NumericalError as e:
        logger.error(f"Numerical failure: {e}", exc_info=args.debug)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_ARGUMENTS


if __name__ == "__main__":
    sys.exit(main())
