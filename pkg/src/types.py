"""
Centralized type definitions for the PD-PIAG bench.

All TypedDict and Callable aliases live here as the single source of truth.
Numerical domain objects (problems, states, traces) are dataclasses in their
own modules; the records below are their serialized forms.
"""

from collections.abc import Callable
from typing import Any, Literal, TypedDict

import numpy as np
from numpy.typing import NDArray

# === Array Aliases ===
Vector = NDArray[np.float64]
Matrix = NDArray[np.float64]

# === Enums as Literals ===
FamilyName = Literal["quadratic-quadratic", "lasso-dual"]
Variant = Literal["thm1", "thm2", "thm3"]
RuleKind = Literal["pdhg_extrapolation", "theta_extrapolation", "arrow_hurwicz"]
ScheduleKind = Literal["cyclic", "random_bounded", "constant"]
OracleStrategy = Literal["separable_exact", "projected_gradient"]
CouplingKind = Literal["identity", "gaussian", "zero"]
TerminationReason = Literal["max_iters", "diverged", "monitor_stop"]

# === Callable Aliases ===
ValueFn = Callable[[Vector], float]
GradientFn = Callable[[Vector], Vector]
MapFn = Callable[[Vector], Vector]
ProxFn = Callable[[float, Vector], Vector]
# Receives a read-only SolverState; returning True stops the run
MonitorFn = Callable[[Any], bool | None]
FamilyBuilderFn = Callable[..., Any]


# === Certificate Records ===


class ConditionCheckData(TypedDict):
    """One serialized step-size condition."""

    name: str
    lhs: float
    rhs: float
    strict: bool
    satisfied: bool
    slack: float


class CertificateData(TypedDict):
    """Serialized step-size certificate."""

    theorem: Variant
    sigma: float
    tau: float
    theta: float | None
    T: int
    K_norm: float
    L: float
    delta: float
    gamma: float
    passed: bool
    checks: list[ConditionCheckData]


class RateConstantsData(TypedDict):
    """Serialized rate constants of the linear-rate theorem."""

    a: float
    omega: float
    theta_min: float
    C: float | None
    C1: float | None


# === Analysis Records ===


class MonitorVerdictData(TypedDict):
    """Outcome of one bound monitor over a trace."""

    name: str
    passed: bool
    checked: int
    violations: int
    max_violation: float
    first_violation_k: int | None
    inexact: bool


class GapCheckpointData(TypedDict):
    """Gap of the averaged iterates at one checkpoint."""

    M: int
    gap: float
    bound: float
    achieved_tol: float
    exact: bool
    inside: bool
    satisfied: bool


class SaddleData(TypedDict):
    """Serialized saddle certificate."""

    x_hat: list[float]
    y_hat: list[float]
    primal_residual: float
    dual_residual: float
    certified: bool


class IterateFileData(TypedDict):
    """Iterate file accepted by the `gap` subcommand."""

    x: list[float]
    y: list[float]


class RunSummaryData(TypedDict, total=False):
    """Run summary written next to the trace."""

    schema_version: str
    config: dict[str, Any]
    seed: int
    certified: bool
    forced: bool
    certificate: CertificateData
    rate_constants: RateConstantsData | None
    saddle: SaddleData | None
    termination: TerminationReason
    iterations: int
    final_dist_x: float | None
    final_dist_y: float | None
    final_primal_residual: float
    final_dual_residual: float
    empirical_rate: float | None
    sup_dist_x: float | None
    max_delay: int
    monitors: list[MonitorVerdictData]
    skipped_monitors: list[str]
    gap_checkpoints: list[GapCheckpointData]
    message: str
    exit_status: int


class SweepRowData(TypedDict):
    """One row of the sweep report."""

    axis: str
    value: str
    exit_status: int
    certified: bool
    sigma: float | None
    tau: float | None
    theta: float | None
    min_slack: float | None
    final_dist_x: float | None
    final_dist_y: float | None
    final_primal_residual: float | None
    final_dual_residual: float | None
    empirical_rate: float | None
    error: str
