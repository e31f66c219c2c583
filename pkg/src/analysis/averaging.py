"""Ergodic averages of the iterates (x_0, y_0 excluded)."""

from collections.abc import Iterable

import numpy as np

from src.analysis.trace import ConvergenceTrace
from src.errors import InvalidArgumentError
from src.types import Vector


def averaged_iterates(trace: ConvergenceTrace, M: int) -> tuple[Vector, Vector]:
    """
    Mean of iterates k = 1..M.

    Args:
        trace: Convergence trace.
        M: Number of post-initial iterates to average.

    Returns:
        Tuple of (x_bar_M, y_bar_M).

    Raises:
        InvalidArgumentError: If M < 1 or the trace has fewer than M steps.
    """
    if M < 1:
        raise InvalidArgumentError(f"M must be at least 1, got {M}")
    if M > trace.iterations:
        raise InvalidArgumentError(f"M={M} exceeds the {trace.iterations} recorded iterations")

    xs = np.stack([record.x for record in trace.records[1 : M + 1]])
    ys = np.stack([record.y for record in trace.records[1 : M + 1]])
    return xs.sum(axis=0) / M, ys.sum(axis=0) / M


def running_averages(
    trace: ConvergenceTrace, checkpoints: Iterable[int]
) -> dict[int, tuple[Vector, Vector]]:
    """
    Averages at several M in one pass over the trace.

    Args:
        trace: Convergence trace.
        checkpoints: Values of M; those beyond the trace length are skipped.

    Returns:
        Mapping M -> (x_bar_M, y_bar_M).
    """
    wanted = sorted({M for M in checkpoints if 1 <= M <= trace.iterations})
    if not wanted:
        return {}

    x_bar = np.zeros_like(trace.records[0].x)
    y_bar = np.zeros_like(trace.records[0].y)
    averages: dict[int, tuple[Vector, Vector]] = {}
    position = 0
    for m in range(1, wanted[-1] + 1):
        record = trace.records[m]
        x_bar = x_bar + (record.x - x_bar) / m
        y_bar = y_bar + (record.y - y_bar) / m
        if m == wanted[position]:
            averages[m] = (x_bar.copy(), y_bar.copy())
            position += 1
    return averages
