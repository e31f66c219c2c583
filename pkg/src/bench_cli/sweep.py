"""
Parameter sweeps.

One experiment per axis value, executed concurrently in a thread pool
capped at `workers`. Each run writes into its own subdirectory; failures
are recorded on their row and never stop the sweep.
"""

import asyncio
import logging
import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any

from src.bench_cli.artifacts import write_csv
from src.bench_cli.experiment import (
    EXIT_DIVERGED,
    EXIT_FAIL,
    EXIT_PARSE_ERROR,
    EXIT_PASS,
    ExperimentResult,
    run_experiment,
)
from src.bench_cli.schema import ExperimentConfig, set_path
from src.config import get_cli_config
from src.errors import ConfigParseError, DivergenceError, InvalidArgumentError
from src.types import SweepRowData

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = tuple(SweepRowData.__annotations__)


def resolve_workers(workers: int | None = None) -> int:
    """Worker cap: explicit value, else config, where 0 means os.cpu_count()."""
    if workers is None:
        workers = get_cli_config()["workers"]
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def value_label(value: Any) -> str:
    """Stable text form of an axis value."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def run_directory(out_dir: Path, axis: str, index: int, value: Any) -> Path:
    """Per-value output directory."""
    label = value_label(value).replace(os.sep, "_")
    return Path(out_dir) / f"{index:03d}_{axis}={label}"


def _empty_row(axis: str, value: Any, exit_status: int, error: str) -> SweepRowData:
    return {
        "axis": axis,
        "value": value_label(value),
        "exit_status": exit_status,
        "certified": False,
        "sigma": None,
        "tau": None,
        "theta": None,
        "min_slack": None,
        "final_dist_x": None,
        "final_dist_y": None,
        "final_primal_residual": None,
        "final_dual_residual": None,
        "empirical_rate": None,
        "error": error,
    }


def result_row(axis: str, value: Any, result: ExperimentResult) -> SweepRowData:
    """Collate one experiment into a sweep row."""
    row = _empty_row(axis, value, result.exit_status, result.summary.get("message", ""))
    steps = result.steps
    if steps is not None:
        row.update(
            certified=steps.certified,
            sigma=steps.sigma,
            tau=steps.tau,
            theta=steps.theta,
            min_slack=steps.certificate.min_slack,
        )
    summary = result.summary
    row.update(
        final_dist_x=summary.get("final_dist_x"),
        final_dist_y=summary.get("final_dist_y"),
        final_primal_residual=summary.get("final_primal_residual"),
        final_dual_residual=summary.get("final_dual_residual"),
        empirical_rate=summary.get("empirical_rate"),
    )
    return row


def run_one(base: ExperimentConfig, axis: str, value: Any, out_dir: Path) -> SweepRowData:
    """
    Run the experiment for a single axis value.

    Never raises for per-run failures; they become the row's exit_status and error.
    """
    try:
        config = set_path(base, axis, value)
        result = run_experiment(config, out_dir)
    except (ConfigParseError, InvalidArgumentError) as e:
        logger.error(f"Sweep {axis}={value_label(value)} rejected: {e}")
        return _empty_row(axis, value, EXIT_PARSE_ERROR, str(e))
    except DivergenceError as e:
        return _empty_row(axis, value, EXIT_DIVERGED, str(e))
    except Exception as e:
        logger.error(f"Sweep {axis}={value_label(value)} failed: {e}")
        return _empty_row(axis, value, EXIT_FAIL, f"{type(e).__name__}: {e}")
    return result_row(axis, value, result)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_status(rows: Sequence[SweepRowData]) -> int:
    """Shared status when every row agrees, EXIT_FAIL otherwise."""
    statuses = {row["exit_status"] for row in rows}
    if len(statuses) == 1:
        return statuses.pop()
    return EXIT_PASS if not statuses else EXIT_FAIL


async def run_sweep(
    base: ExperimentConfig,
    axis: str,
    values: Sequence[Any],
    out_dir: Path,
    workers: int | None = None,
) -> list[SweepRowData]:
    """
    Run one experiment per value and write sweep.csv.

    Args:
        base: Config every run starts from.
        axis: Axis shorthand (T, sigma, theta, N, ...) or dotted config path.
        values: Values along the axis.
        out_dir: Root directory; runs go to numbered subdirectories.
        workers: Concurrency cap (default from config, 0 = os.cpu_count()).

    Returns:
        Rows in the order of values.

    Side effects:
        Writes every run's artifacts and out_dir/sweep.csv.
    """
    out_dir = Path(out_dir)
    limit = resolve_workers(workers)
    logger.info(f"Sweeping {axis} over {len(values)} values with {limit} workers")

    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(limit)

    with ThreadPoolExecutor(max_workers=limit) as executor:

        async def bounded(index: int, value: Any) -> SweepRowData:
            async with semaphore:
                target = run_directory(out_dir, axis, index, value)
                return await loop.run_in_executor(executor, run_one, base, axis, value, target)

        rows = await asyncio.gather(*(bounded(i, value) for i, value in enumerate(values)))

    cells = [[_cell(dict(row)[column]) for column in SWEEP_COLUMNS] for row in rows]
    write_csv(out_dir / "sweep.csv", SWEEP_COLUMNS, cells)
    failed = sum(1 for row in rows if row["exit_status"] != EXIT_PASS)
    logger.info(f"Sweep finished: {len(rows) - failed} passed, {failed} not passed")
    return list(rows)
