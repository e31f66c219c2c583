"""
Command-line entry point.

Usage:
    python -m src.bench_cli run configs/experiments/thm1_quadratic.yaml --out-dir runs/thm1
    python -m src.bench_cli certify configs/experiments/thm2_linear_rate.yaml
    python -m src.bench_cli sweep configs/experiments/thm1_quadratic.yaml --axis T --values 0,2,4
    python -m src.bench_cli gap configs/experiments/thm1_quadratic.yaml --at iterate.json

Settings resolve as flag > environment (PDPIAG_SEED, PDPIAG_FORCE,
PDPIAG_OUT_DIR, PDPIAG_WORKERS, PDPIAG_LOG_LEVEL) > config file.
"""

import argparse
import asyncio
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import yaml

from src.bench_cli.experiment import (
    EXIT_FAIL,
    EXIT_INFEASIBLE,
    EXIT_PARSE_ERROR,
    EXIT_PASS,
    certify_config,
    format_certificate,
    gap_at,
    run_experiment,
)
from src.bench_cli.schema import ExperimentConfig, apply_overrides, parse_config
from src.bench_cli.sweep import run_sweep, sweep_status
from src.config import get_cli_config, get_config, get_env_override
from src.errors import ConfigParseError, InfeasibleStepSizeError, InvalidArgumentError

logger = logging.getLogger(__name__)

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as parse errors instead of exiting with status 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigParseError(message, key="<command line>")


def build_parser() -> argparse.ArgumentParser:
    """Parser with the run, certify, sweep and gap subcommands."""
    common = _ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Experiment seed")
    common.add_argument(
        "--force",
        action="store_true",
        default=None,
        help="Run even when the step sizes are not certified",
    )
    common.add_argument("--out-dir", default=None, help="Directory for artifacts")
    common.add_argument(
        "--workers", type=int, default=None, help="Sweep concurrency (0 = all cores)"
    )
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = _ArgumentParser(
        prog="pdpiag-bench",
        description="Certify and run delayed primal-dual incremental gradient experiments.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", parents=[common], help="Run one experiment")
    run_parser.add_argument("config", help="Experiment config (YAML or JSON)")

    certify_parser = commands.add_parser(
        "certify", parents=[common], help="Print the step-size certificate without running"
    )
    certify_parser.add_argument("config", help="Experiment config (YAML or JSON)")

    sweep_parser = commands.add_parser(
        "sweep", parents=[common], help="Run one experiment per value"
    )
    sweep_parser.add_argument("config", help="Base experiment config")
    sweep_parser.add_argument(
        "--axis", required=True, help="T, sigma, theta, N, ... or dotted path"
    )
    sweep_parser.add_argument("--values", required=True, help="Comma-separated values")

    gap_parser = commands.add_parser("gap", parents=[common], help="Restricted gap at an iterate")
    gap_parser.add_argument("config", help="Experiment config (YAML or JSON)")
    gap_parser.add_argument("--at", required=True, help='Iterate file {"x": [...], "y": [...]}')

    return parser


def parse_values(text: str) -> list[Any]:
    """Split a comma-separated list, reading each item as a YAML scalar."""
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ConfigParseError("empty value in --values", key="--values")
        values.append(yaml.safe_load(item))
    return values


def _parse_flag(value: str | None, name: str) -> bool | None:
    if value is None:
        return None
    lowered = value.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ConfigParseError(f"expected a boolean, got '{value}'", key=name)


def _parse_int(value: str | None, name: str) -> int | None:
    if value is None:
        return None
    try:
        return int(value)
    except ValueError as e:
        raise ConfigParseError(f"expected an integer, got '{value}'", key=name) from e


def configure_logging(level: str | None) -> None:
    """
    Configure the root logger once per invocation.

    Side effects:
        Replaces root handlers.
    """
    name = (level or get_env_override("log_level") or get_config("logging.level", "INFO")).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.INFO),
        format=get_config("logging.format", "%(levelname)s %(name)s: %(message)s"),
        stream=sys.stderr,
        force=True,
    )


def load_experiment(path: str, args: argparse.Namespace) -> ExperimentConfig:
    """
    Read, validate and override a config file.

    Raises:
        ConfigParseError: On unreadable or invalid input.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigParseError(f"cannot read config: {e}", key="<document>") from e
    config = parse_config(text)

    seed = args.seed
    if seed is None:
        seed = _parse_int(get_env_override("seed"), "PDPIAG_SEED")
    force = args.force
    if force is None:
        force = _parse_flag(get_env_override("force"), "PDPIAG_FORCE")
    return apply_overrides(config, seed=seed, force=force)


def _out_dir(args: argparse.Namespace) -> Path:
    return Path(args.out_dir or get_env_override("out_dir") or get_cli_config()["out_dir"])


def _workers(args: argparse.Namespace) -> int | None:
    if args.workers is not None:
        return int(args.workers)
    return _parse_int(get_env_override("workers"), "PDPIAG_WORKERS")


def _run(args: argparse.Namespace) -> int:
    config = load_experiment(args.config, args)
    out_dir = _out_dir(args)
    result = run_experiment(config, out_dir)
    for path in result.paths:
        print(path)
    return result.exit_status


def _certify(args: argparse.Namespace) -> int:
    config = load_experiment(args.config, args)
    try:
        certificate = certify_config(config)
    except InfeasibleStepSizeError as e:
        if e.last_certificate is not None:
            print(format_certificate(e.last_certificate))
        print(f"infeasible: {e}")
        return EXIT_INFEASIBLE
    print(format_certificate(certificate))
    return EXIT_PASS if certificate.passed else EXIT_FAIL


def _sweep(args: argparse.Namespace) -> int:
    config = load_experiment(args.config, args)
    values = parse_values(args.values)
    out_dir = _out_dir(args)
    rows = asyncio.run(run_sweep(config, args.axis, values, out_dir, _workers(args)))
    print(out_dir / "sweep.csv")
    return sweep_status(rows)


def _gap(args: argparse.Namespace) -> int:
    config = load_experiment(args.config, args)
    evaluation = gap_at(config, Path(args.at))
    print(
        f"gap={evaluation.value!r} dual_max={evaluation.dual_max!r} "
        f"primal_min={evaluation.primal_min!r} achieved_tol={evaluation.achieved_tol!r} "
        f"exact={str(evaluation.exact).lower()} inside={str(evaluation.inside).lower()}"
    )
    return EXIT_PASS


_COMMANDS = {"run": _run, "certify": _certify, "sweep": _sweep, "gap": _gap}


def main(argv: Sequence[str] | None = None) -> int:
    """
    Parse arguments, dispatch the subcommand and return its exit status.

    Args:
        argv: Arguments without the program name (default sys.argv[1:]).

    Returns:
        0 pass, 1 certificate or monitor failure, 2 infeasible, 3 diverged, 4 parse error.
    """
    try:
        args = build_parser().parse_args(argv)
    except ConfigParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR

    configure_logging(args.log_level)
    try:
        return _COMMANDS[args.command](args)
    except ConfigParseError as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except InvalidArgumentError as e:
        logger.error(f"Invalid experiment: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
