"""
Bound monitors over recorded traces.

Monitors are pure functions of a trace and constants; they report
violations rather than raising, so uncertified runs can be inspected.
Tolerance per check is tol_abs + tol_rel * |bound|.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from src.analysis.averaging import running_averages
from src.analysis.boxes import BoxSet, gap_bound
from src.analysis.gap import GapOracle, partial_gap
from src.analysis.trace import ConvergenceTrace
from src.config import get_analysis_config
from src.saddle_problem.components import SaddleProblem
from src.types import GapCheckpointData, MonitorVerdictData, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapCheckpoint:
    """Gap of the averaged iterates at M against its bound."""

    M: int
    gap: float
    bound: float
    achieved_tol: float
    exact: bool
    inside: bool
    satisfied: bool

    def to_data(self) -> GapCheckpointData:
        """Serialize for summaries."""
        return {
            "M": self.M,
            "gap": self.gap,
            "bound": self.bound,
            "achieved_tol": self.achieved_tol,
            "exact": self.exact,
            "inside": self.inside,
            "satisfied": self.satisfied,
        }


@dataclass
class MonitorVerdict:
    """
    Aggregated outcome of one monitor.

    Args:
        name: Monitor name.
        checks: Per-iteration (or per-checkpoint) pass flags.
        bounds: Bound value at each check.
        checkpoints: Gap checkpoints (gap monitors only).
    """

    name: str
    checks: list[bool] = field(default_factory=list)
    bounds: list[float] = field(default_factory=list)
    violations_by_k: dict[int, float] = field(default_factory=dict)
    checkpoints: list[GapCheckpoint] = field(default_factory=list)
    inexact: bool = False

    @property
    def passed(self) -> bool:
        """No violation recorded."""
        return not self.violations_by_k

    @property
    def max_violation(self) -> float:
        """Largest lhs - bound among violations (0 when passed)."""
        return max(self.violations_by_k.values(), default=0.0)

    @property
    def first_violation_k(self) -> int | None:
        """Earliest violating index."""
        return min(self.violations_by_k) if self.violations_by_k else None

    def to_data(self) -> MonitorVerdictData:
        """Serialize for summaries."""
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": len(self.checks),
            "violations": len(self.violations_by_k),
            "max_violation": self.max_violation,
            "first_violation_k": self.first_violation_k,
            "inexact": self.inexact,
        }


def _tolerance(bound: float) -> float:
    cfg = get_analysis_config()
    return cfg["monitor_tol_abs"] + cfg["monitor_tol_rel"] * abs(bound)


def _check(verdict: MonitorVerdict, k: int, lhs: float, bound: float) -> None:
    ok = bool(lhs <= bound + _tolerance(bound))
    verdict.checks.append(ok)
    verdict.bounds.append(bound)
    if not ok:
        verdict.violations_by_k[k] = lhs - bound


def _log_verdict(verdict: MonitorVerdict) -> MonitorVerdict:
    if verdict.passed:
        logger.info(f"Monitor {verdict.name}: {len(verdict.checks)} checks passed")
    else:
        logger.warning(
            f"Monitor {verdict.name}: {len(verdict.violations_by_k)} violations, "
            f"first at k={verdict.first_violation_k}, max {verdict.max_violation:.3e}"
        )
    return verdict


def _weighted_sq(
    x: Vector, x_hat: Vector, y: Vector, y_hat: Vector, sigma: float, tau: float
) -> tuple[float, float]:
    dx = float(np.dot(x - x_hat, x - x_hat))
    dy = float(np.dot(y - y_hat, y - y_hat))
    return dx / (2.0 * sigma), dy / (2.0 * tau)


def _boundedness(
    name: str,
    trace: ConvergenceTrace,
    C: float,
    saddle: tuple[Vector, Vector],
    sigma: float,
    tau: float,
) -> MonitorVerdict:
    x_hat, y_hat = saddle
    first = trace.records[0]
    px0, py0 = _weighted_sq(first.x, x_hat, first.y, y_hat, sigma, tau)
    bound = C * (px0 + py0)

    verdict = MonitorVerdict(name=name)
    for record in trace.records:
        px, py = _weighted_sq(record.x, x_hat, record.y, y_hat, sigma, tau)
        _check(verdict, record.k, px + py, bound)
    return _log_verdict(verdict)


def monitor_thm1_boundedness(
    trace: ConvergenceTrace,
    C: float,
    saddle: tuple[Vector, Vector],
    sigma: float,
    tau: float,
) -> MonitorVerdict:
    """
    |x_k - x_hat|^2/(2 sigma) + |y_k - y_hat|^2/(2 tau) <= C V_0 at every k.

    Args:
        trace: Recorded run.
        C: Boundedness constant.
        saddle: (x_hat, y_hat).
        sigma: Primal step of the run.
        tau: Dual step of the run.

    Returns:
        MonitorVerdict named "thm1_boundedness".
    """
    return _boundedness("thm1_boundedness", trace, C, saddle, sigma, tau)


def monitor_thm3_boundedness(
    trace: ConvergenceTrace,
    C: float,
    saddle: tuple[Vector, Vector],
    sigma: float,
    tau: float,
) -> MonitorVerdict:
    """Same inequality as monitor_thm1_boundedness for the Arrow-Hurwicz variant."""
    return _boundedness("thm3_boundedness", trace, C, saddle, sigma, tau)


def monitor_thm2_linear(
    trace: ConvergenceTrace,
    omega: float,
    saddle: tuple[Vector, Vector],
    sigma: float,
    tau: float,
    K_norm: float,
) -> MonitorVerdict:
    """
    |y_k - y_hat|^2/(2 tau) + (1 - sigma tau |K|^2) |x_k - x_hat|^2/(2 sigma) <= omega^k V_0.

    Args:
        trace: Recorded run.
        omega: Contraction factor.
        saddle: (x_hat, y_hat).
        sigma: Primal step of the run.
        tau: Dual step of the run.
        K_norm: |K|.

    Returns:
        MonitorVerdict named "thm2_linear".
    """
    x_hat, y_hat = saddle
    first = trace.records[0]
    v0 = sum(_weighted_sq(first.x, x_hat, first.y, y_hat, sigma, tau))
    primal_weight = 1.0 - sigma * tau * K_norm**2

    verdict = MonitorVerdict(name="thm2_linear")
    for record in trace.records:
        px, py = _weighted_sq(record.x, x_hat, record.y, y_hat, sigma, tau)
        _check(verdict, record.k, py + primal_weight * px, omega**record.k * v0)
    return _log_verdict(verdict)


def linear_bound_series(trace: ConvergenceTrace, omega: float) -> list[float | None]:
    """omega^k V_0 per record (None without a saddle)."""
    v0 = trace.records[0].V
    if v0 is None:
        return [None] * len(trace.records)
    return [omega**record.k * v0 for record in trace.records]


def _gap_monitor(
    name: str,
    trace: ConvergenceTrace,
    problem: SaddleProblem,
    B1: BoxSet,
    B2: BoxSet,
    oracle: GapOracle | None,
    x0: Vector,
    y0: Vector,
    sigma: float,
    tau: float,
    checkpoints: Sequence[int],
) -> MonitorVerdict:
    skipped = [M for M in checkpoints if not 1 <= M <= trace.iterations]
    if skipped:
        logger.debug(f"Monitor {name}: checkpoints {skipped} outside the trace")

    verdict = MonitorVerdict(name=name)
    for M, (x_bar, y_bar) in sorted(running_averages(trace, checkpoints).items()):
        evaluation = partial_gap(problem, B1, B2, x_bar, y_bar, oracle)
        bound = gap_bound(B1, B2, x0, y0, sigma, tau, M)
        lhs = evaluation.value - evaluation.achieved_tol
        _check(verdict, M, lhs, bound)
        if not evaluation.exact:
            verdict.inexact = True
        verdict.checkpoints.append(
            GapCheckpoint(
                M=M,
                gap=evaluation.value,
                bound=bound,
                achieved_tol=evaluation.achieved_tol,
                exact=evaluation.exact,
                inside=evaluation.inside,
                satisfied=verdict.checks[-1],
            )
        )
        logger.debug(f"Monitor {name}: M={M} gap={evaluation.value:.6e} bound={bound:.6e}")
    return _log_verdict(verdict)


def monitor_thm1_gap(
    trace: ConvergenceTrace,
    problem: SaddleProblem,
    B1: BoxSet,
    B2: BoxSet,
    oracle: GapOracle | None,
    x0: Vector,
    y0: Vector,
    sigma: float,
    tau: float,
    checkpoints: Sequence[int],
) -> MonitorVerdict:
    """
    Gap of the averaged iterates against (1/M) max_{B1 x B2} of the start distance.

    Args:
        trace: Recorded run.
        problem: Problem the run solved.
        B1: Primal box.
        B2: Dual box.
        oracle: Gap oracle (default chosen per problem).
        x0: Primal start.
        y0: Dual start.
        sigma: Primal step of the run.
        tau: Dual step of the run.
        checkpoints: Values of M; those beyond the trace are skipped.

    Returns:
        MonitorVerdict named "thm1_gap" with per-checkpoint details.
    """
    return _gap_monitor(
        "thm1_gap", trace, problem, B1, B2, oracle, x0, y0, sigma, tau, checkpoints
    )


def monitor_thm3_gap(
    trace: ConvergenceTrace,
    problem: SaddleProblem,
    B1: BoxSet,
    B2: BoxSet,
    oracle: GapOracle | None,
    x0: Vector,
    y0: Vector,
    sigma: float,
    tau: float,
    checkpoints: Sequence[int],
) -> MonitorVerdict:
    """Gap bound of the Arrow-Hurwicz variant; same shape as monitor_thm1_gap."""
    return _gap_monitor(
        "thm3_gap", trace, problem, B1, B2, oracle, x0, y0, sigma, tau, checkpoints
    )
