"""
Optimality measurement: boxes, restricted gap, saddle points, averaged
iterates, traces, bound monitors and observed rates.
"""

from src.analysis.averaging import averaged_iterates, running_averages
from src.analysis.boxes import BoxSet, default_boxes, gap_bound
from src.analysis.gap import GapEvaluation, GapOracle, partial_gap, supports_separable_exact
from src.analysis.monitors import (
    GapCheckpoint,
    MonitorVerdict,
    linear_bound_series,
    monitor_thm1_boundedness,
    monitor_thm1_gap,
    monitor_thm2_linear,
    monitor_thm3_boundedness,
    monitor_thm3_gap,
)
from src.analysis.rates import empirical_rate, sup_dist_x
from src.analysis.saddle import (
    SaddleCertificate,
    analytic_saddle,
    find_saddle,
    reference_saddle,
    saddle_quadratic,
    saddle_residual,
)
from src.analysis.trace import (
    TRACE_COLUMNS,
    ConvergenceTrace,
    IterationRecord,
    ReplayReport,
    replay_memory,
    trace_rows,
)

__all__ = [
    # Boxes
    "BoxSet",
    "default_boxes",
    "gap_bound",
    # Gap
    "GapEvaluation",
    "GapOracle",
    "partial_gap",
    "supports_separable_exact",
    # Saddle
    "SaddleCertificate",
    "analytic_saddle",
    "find_saddle",
    "reference_saddle",
    "saddle_quadratic",
    "saddle_residual",
    # Averaging
    "averaged_iterates",
    "running_averages",
    # Trace
    "TRACE_COLUMNS",
    "ConvergenceTrace",
    "IterationRecord",
    "ReplayReport",
    "replay_memory",
    "trace_rows",
    # Monitors
    "GapCheckpoint",
    "MonitorVerdict",
    "linear_bound_series",
    "monitor_thm1_boundedness",
    "monitor_thm1_gap",
    "monitor_thm2_linear",
    "monitor_thm3_boundedness",
    "monitor_thm3_gap",
    # Rates
    "empirical_rate",
    "sup_dist_x",
]
