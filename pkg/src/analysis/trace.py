"""
Convergence traces.

A trace holds one record per iterate (the initial state included) plus a
header describing the run. It is append-only while the solver runs and
closed afterwards; monitors and writers only read it.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from src.config import get_solver_config
from src.saddle_problem.components import SaddleProblem
from src.types import TerminationReason, Vector

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("k", "dist_x", "dist_y", "V_k", "gap", "gap_bound", "thm_bound", "wall_ms")


@dataclass(frozen=True)
class IterationRecord:
    """
    State of iterate k as seen by the analysis layer.

    Args:
        k: Iteration index.
        x: Primal iterate.
        y: Dual iterate.
        delays: Staleness of every memory entry behind g_k.
        aggregate: Memory aggregate g_k used by step k.
        dist_x: |x_k - x_hat| when a saddle is known.
        dist_y: |y_k - y_hat| when a saddle is known.
        V: |x_k - x_hat|^2 / (2 sigma) + |y_k - y_hat|^2 / (2 tau) when a saddle is known.
        wall_ms: Milliseconds since the run started.
    """

    k: int
    x: Vector
    y: Vector
    delays: tuple[int, ...]
    aggregate: Vector
    dist_x: float | None = None
    dist_y: float | None = None
    V: float | None = None
    wall_ms: float = 0.0


@dataclass
class ConvergenceTrace:
    """
    Per-iteration records and run header.

    Args:
        header: Self-description (config, seed, step sizes, rule, schedule).
        sigma: Primal step.
        tau: Dual step.
        x_hat: Reference primal saddle point, if known.
        y_hat: Reference dual saddle point, if known.
    """

    header: dict[str, Any]
    sigma: float
    tau: float
    x_hat: Vector | None = None
    y_hat: Vector | None = None
    records: list[IterationRecord] = field(default_factory=list)
    termination: TerminationReason = "max_iters"
    error: str | None = None
    monitor_errors: int = 0
    _closed: bool = False

    def distances(self, x: Vector, y: Vector) -> tuple[float | None, float | None, float | None]:
        """(dist_x, dist_y, V) of a point relative to the reference saddle."""
        if self.x_hat is None or self.y_hat is None:
            return None, None, None
        dist_x = float(np.linalg.norm(x - self.x_hat))
        dist_y = float(np.linalg.norm(y - self.y_hat))
        lyapunov = dist_x**2 / (2.0 * self.sigma) + dist_y**2 / (2.0 * self.tau)
        return dist_x, dist_y, lyapunov

    def append(self, record: IterationRecord) -> None:
        """
        Append the next record.

        Side effects:
            Extends records.

        Raises:
            RuntimeError: If the trace is closed or the index is out of sequence.
        """
        if self._closed:
            raise RuntimeError("Trace is closed")
        if record.k != len(self.records):
            raise RuntimeError(f"Expected record {len(self.records)}, got {record.k}")
        self.records.append(record)

    def close(self, termination: TerminationReason, error: str | None = None) -> None:
        """
        Mark the run finished.

        Side effects:
            Freezes the trace.
        """
        self.termination = termination
        self.error = error
        self._closed = True

    @property
    def closed(self) -> bool:
        """Whether the run has finished."""
        return self._closed

    @property
    def iterations(self) -> int:
        """Completed steps (records minus the initial state)."""
        return len(self.records) - 1

    @property
    def final(self) -> IterationRecord:
        """Last record."""
        return self.records[-1]

    @property
    def max_delay(self) -> int:
        """Largest stored delay over the run."""
        return max((max(record.delays) for record in self.records if record.delays), default=0)

    def V_series(self) -> list[float | None]:
        """Lyapunov values per iterate."""
        return [record.V for record in self.records]


@dataclass(frozen=True)
class ReplayReport:
    """Outcome of recomputing the memory aggregates from stored iterates."""

    passed: bool
    checked: int
    max_error: float
    max_delay: int
    first_failure_k: int | None


def replay_memory(
    trace: ConvergenceTrace,
    problem: SaddleProblem,
    T: int | None = None,
    rel_tol: float | None = None,
) -> ReplayReport:
    """
    Recompute g_k = sum_i grad f_i(x_{k - delay_i}) from the stored iterates.

    Args:
        trace: Trace with every iterate recorded.
        problem: Problem the trace was produced on.
        T: Delay bound to enforce (not enforced when None).
        rel_tol: Aggregate tolerance relative to max(1, |g_k|) (default from config).

    Returns:
        ReplayReport.
    """
    if rel_tol is None:
        rel_tol = get_solver_config()["aggregate_tol"]

    max_error = 0.0
    first_failure: int | None = None
    for record in trace.records:
        recomputed = np.zeros(problem.d1)
        for i, delay in enumerate(record.delays):
            source = trace.records[record.k - delay]
            recomputed = recomputed + problem.components[i].gradient(source.x)

        scale = max(1.0, float(np.linalg.norm(record.aggregate)))
        error = float(np.max(np.abs(recomputed - record.aggregate))) / scale
        max_error = max(max_error, error)
        delay_ok = T is None or max(record.delays) <= T
        if (error > rel_tol or not delay_ok) and first_failure is None:
            first_failure = record.k

    if first_failure is not None:
        logger.warning(f"Memory replay failed first at k={first_failure}")
    return ReplayReport(
        passed=first_failure is None,
        checked=len(trace.records),
        max_error=max_error,
        max_delay=trace.max_delay,
        first_failure_k=first_failure,
    )


def _cell(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def trace_rows(
    trace: ConvergenceTrace,
    gap_points: Mapping[int, tuple[float, float]] | None = None,
    thm_bounds: Sequence[float | None] | None = None,
    record_wall_time: bool = False,
) -> list[list[str]]:
    """
    Render the trace as CSV rows in TRACE_COLUMNS order (header excluded).

    Args:
        trace: Trace to render.
        gap_points: Checkpoint M -> (gap, bound), placed on row k = M.
        thm_bounds: Per-iterate theorem bound values.
        record_wall_time: Emit wall_ms (breaks byte reproducibility).

    Returns:
        Rows of formatted cells; inapplicable cells are empty.
    """
    gap_points = gap_points or {}
    rows = []
    for record in trace.records:
        gap, gap_bound = gap_points.get(record.k, (None, None))
        thm_bound = thm_bounds[record.k] if thm_bounds is not None else None
        rows.append(
            [
                _cell(record.k),
                _cell(record.dist_x),
                _cell(record.dist_y),
                _cell(record.V),
                _cell(gap),
                _cell(gap_bound),
                _cell(thm_bound),
                _cell(record.wall_ms) if record_wall_time else "",
            ]
        )
    return rows
