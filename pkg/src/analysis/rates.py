"""Observed convergence rates."""

import math

import numpy as np

from src.analysis.trace import ConvergenceTrace
from src.config import get_analysis_config


def empirical_rate(trace: ConvergenceTrace, floor: float | None = None) -> float | None:
    """
    Least-squares slope of log V_k against k.

    Only the leading stretch with V_k >= floor * V_0 (and V_k > 0) is used, so
    the fit stops before round-off dominates.

    Args:
        trace: Trace recorded with a known saddle.
        floor: Relative cut-off (default from config).

    Returns:
        Slope (log of the per-step contraction), or None with fewer than two usable points.
    """
    if floor is None:
        floor = get_analysis_config()["rate_floor"]

    values = trace.V_series()
    if not values or values[0] is None or not values[0] > 0:
        return None
    cutoff = floor * values[0]

    ks: list[int] = []
    logs: list[float] = []
    for k, value in enumerate(values):
        if value is None or not value > 0 or value < cutoff or not math.isfinite(value):
            break
        ks.append(k)
        logs.append(math.log(value))

    if len(ks) < 2:
        return None
    slope, _ = np.polyfit(np.asarray(ks, dtype=np.float64), np.asarray(logs), 1)
    return float(slope)


def sup_dist_x(trace: ConvergenceTrace) -> float | None:
    """Largest |x_k - x_hat| over the trace (None without a saddle)."""
    distances = [record.dist_x for record in trace.records if record.dist_x is not None]
    return max(distances) if distances else None
