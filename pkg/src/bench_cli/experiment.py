"""
Experiment execution.

Turns a validated ExperimentConfig into a problem, certified step sizes, a
solver run, monitor verdicts and three artifacts (trace CSV, summary JSON,
plot data). Exit statuses:

    0  run finished and every enabled monitor passed
    1  certificate failed (without --force) or a monitor reported a violation
    2  auto step-size search infeasible
    3  iterates diverged
    4  config or input could not be parsed
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from src.analysis.boxes import BoxSet, default_boxes
from src.analysis.gap import GapEvaluation, GapOracle, partial_gap
from src.analysis.monitors import (
    MonitorVerdict,
    linear_bound_series,
    monitor_thm1_boundedness,
    monitor_thm1_gap,
    monitor_thm2_linear,
    monitor_thm3_boundedness,
    monitor_thm3_gap,
)
from src.analysis.rates import empirical_rate, sup_dist_x
from src.analysis.saddle import SaddleCertificate, find_saddle, saddle_residual
from src.analysis.trace import ConvergenceTrace
from src.bench_cli.artifacts import write_json, write_plotdata, write_trace
from src.bench_cli.schema import ExperimentConfig, MonitorName, config_to_dict
from src.certificates.conditions import (
    RateConstants,
    StepSizeCertificate,
    compute_a_omega,
    compute_C,
)
from src.certificates.stepsize import auto_stepsize, certify_variant, midpoint_theta
from src.config import get_schema_version
from src.errors import ConfigParseError, InfeasibleStepSizeError, InvalidArgumentError
from src.pd_piag.extrapolation import ExtrapolationRule
from src.pd_piag.schedules import DelaySchedule
from src.pd_piag.solver import run
from src.saddle_problem.catalog import build_problem
from src.saddle_problem.components import SaddleProblem
from src.types import RunSummaryData, Variant, Vector

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_DIVERGED = 3
EXIT_PARSE_ERROR = 4
EXIT_STATUSES = (EXIT_PASS, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_DIVERGED, EXIT_PARSE_ERROR)

DEFAULT_MONITORS: dict[Variant, tuple[MonitorName, ...]] = {
    "thm1": ("boundedness", "gap"),
    "thm2": ("linear_rate",),
    "thm3": ("boundedness", "gap"),
}


@dataclass(frozen=True)
class ResolvedSteps:
    """Step sizes a run will use, with the certificate they were checked against."""

    sigma: float
    tau: float
    theta: float | None
    certificate: StepSizeCertificate
    auto: bool
    halvings: int | None = None

    @property
    def certified(self) -> bool:
        """Every condition of the certificate holds."""
        return self.certificate.passed


@dataclass
class ExperimentResult:
    """
    Outcome of one experiment.

    Args:
        exit_status: One of EXIT_STATUSES.
        summary: Summary written to disk.
        steps: Resolved step sizes (None when the search was infeasible).
        trace: Solver trace (None when the solver did not run).
        verdicts: Monitor verdicts.
        paths: Artifacts written.
    """

    exit_status: int
    summary: RunSummaryData
    steps: ResolvedSteps | None = None
    trace: ConvergenceTrace | None = None
    verdicts: list[MonitorVerdict] = field(default_factory=list)
    paths: list[Path] = field(default_factory=list)


class IterateFile(BaseModel):
    """Iterate file accepted by `gap --at`."""

    model_config = ConfigDict(extra="forbid")

    x: list[float]
    y: list[float]


# === Building blocks ===


def build_experiment_problem(config: ExperimentConfig) -> SaddleProblem:
    """Instantiate the catalog family named by the config."""
    settings = config.problem
    params: dict[str, Any] = {
        "d1": settings.d1,
        "d2": settings.d2,
        "N": settings.N,
        "seed": config.problem_seed,
        "coupling": settings.coupling,
        "coupling_scale": settings.coupling_scale,
    }
    if settings.family == "quadratic-quadratic":
        params.update(
            gamma=settings.gamma, conditioning=settings.conditioning, diagonal=settings.diagonal
        )
    else:
        params.update(lam=settings.lam, rows_per_component=settings.rows_per_component)
    return build_problem(settings.family, **params)


def build_schedule(config: ExperimentConfig) -> DelaySchedule:
    """Delay schedule named by the config."""
    schedule = config.solver.schedule
    if schedule.kind == "cyclic":
        return DelaySchedule.cyclic()
    if schedule.kind == "constant":
        return DelaySchedule.constant(schedule.T)
    return DelaySchedule.random_bounded(schedule.T, schedule.p, config.schedule_seed)


def initial_point(config: ExperimentConfig) -> tuple[Vector, Vector]:
    """(x0, y0) from the config, zeros where omitted."""
    d1, d2 = config.problem.d1, config.problem.d2
    assert d2 is not None
    x0, y0 = np.zeros(d1), np.zeros(d2)
    if config.solver.x0 is not None:
        x0 = np.asarray(config.solver.x0, dtype=np.float64)
    if config.solver.y0 is not None:
        y0 = np.asarray(config.solver.y0, dtype=np.float64)
    return x0, y0


def resolve_step_sizes(config: ExperimentConfig, problem: SaddleProblem, T: int) -> ResolvedSteps:
    """
    Derive or certify (sigma, tau, theta).

    "auto" step sizes come from the halving search; an explicit theta is then
    certified together with them. Explicit step sizes are certified as given.

    Args:
        config: Validated config.
        problem: Problem supplying L, |K|, delta and gamma.
        T: Delay bound of the schedule.

    Returns:
        ResolvedSteps; the certificate may fail for explicit inputs.

    Raises:
        InfeasibleStepSizeError: When the auto search finds nothing.
    """
    solver = config.solver
    variant = solver.variant
    explicit_theta = None if solver.theta == "auto" else float(solver.theta)

    if solver.sigma == "auto":
        choice = auto_stepsize(problem, T, variant)
        if explicit_theta is None:
            return ResolvedSteps(
                sigma=choice.sigma,
                tau=choice.tau,
                theta=choice.theta,
                certificate=choice.certificate,
                auto=True,
                halvings=choice.halvings,
            )
        sigma, tau = choice.sigma, choice.tau
    else:
        assert solver.tau != "auto"
        sigma, tau = float(solver.sigma), float(solver.tau)

    theta = None
    if variant == "thm2":
        theta = explicit_theta
        if theta is None:
            theta = midpoint_theta(sigma, tau, problem.delta, problem.gamma)
    certificate = certify_variant(
        variant, sigma, tau, theta, problem.L, problem.K_norm, problem.delta, problem.gamma, T
    )
    return ResolvedSteps(
        sigma=sigma,
        tau=tau,
        theta=theta,
        certificate=certificate,
        auto=solver.sigma == "auto",
    )


def certify_config(config: ExperimentConfig) -> StepSizeCertificate:
    """
    Certificate for a config without running the solver.

    Raises:
        InfeasibleStepSizeError: When "auto" step sizes cannot be certified.
    """
    problem = build_experiment_problem(config)
    T = build_schedule(config).effective_T(problem.N)
    return resolve_step_sizes(config, problem, T).certificate


def format_certificate(certificate: StepSizeCertificate) -> str:
    """Human-readable certificate: one line per condition and a verdict."""
    theta = "-" if certificate.theta is None else f"{certificate.theta:.6g}"
    lines = [
        f"certificate {certificate.theorem}: sigma={certificate.sigma:.6g} "
        f"tau={certificate.tau:.6g} theta={theta} T={certificate.T}",
        f"  constants: L={certificate.L:.6g} |K|={certificate.K_norm:.6g} "
        f"delta={certificate.delta:.6g} gamma={certificate.gamma:.6g}",
    ]
    for check in certificate.checks:
        relation = "<" if check.strict else "<="
        verdict = "PASS" if check.satisfied else "FAIL"
        lines.append(
            f"  {check.name:<24} {check.lhs:.6g} {relation} {check.rhs:.6g}  "
            f"slack={check.slack:.6g}  {verdict}"
        )
    lines.append(f"verdict: {'PASS' if certificate.passed else 'FAIL'}")
    return "\n".join(lines)


def build_boxes(
    config: ExperimentConfig,
    saddle: SaddleCertificate,
    x0: Vector,
    y0: Vector,
) -> tuple[BoxSet, BoxSet]:
    """
    Gap boxes from the config, or the default boxes around the saddle.

    Raises:
        ConfigParseError: If explicit boxes do not match the problem dimensions.
    """
    boxes = config.analysis.boxes
    if boxes is None:
        return default_boxes(saddle.x_hat, saddle.y_hat, x0, y0)
    try:
        B1 = BoxSet(np.asarray(boxes.x_lower), np.asarray(boxes.x_upper))
        B2 = BoxSet(np.asarray(boxes.y_lower), np.asarray(boxes.y_upper))
    except InvalidArgumentError as e:
        raise ConfigParseError(str(e), key="analysis.boxes") from e
    if B1.dim != config.problem.d1 or B2.dim != config.problem.d2:
        raise ConfigParseError(
            f"boxes must have dimensions ({config.problem.d1}, {config.problem.d2}), "
            f"got ({B1.dim}, {B2.dim})",
            key="analysis.boxes",
        )
    return B1, B2


def _oracle(config: ExperimentConfig, problem: SaddleProblem) -> GapOracle:
    strategy = config.analysis.oracle
    if strategy is None:
        return GapOracle.for_problem(problem)
    return GapOracle(strategy=strategy)


# === Monitors ===


@dataclass
class _MonitorOutcome:
    verdicts: list[MonitorVerdict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    thm_bounds: list[float | None] | None = None
    gap_points: dict[int, tuple[float, float]] = field(default_factory=dict)
    rate_constants: RateConstants | None = None


def _run_monitors(
    config: ExperimentConfig,
    problem: SaddleProblem,
    trace: ConvergenceTrace,
    steps: ResolvedSteps,
    saddle: SaddleCertificate,
    x0: Vector,
    y0: Vector,
    T: int,
) -> _MonitorOutcome:
    variant = config.solver.variant
    requested = config.analysis.monitors
    names = DEFAULT_MONITORS[variant] if requested is None else tuple(requested)
    point = (saddle.x_hat, saddle.y_hat)
    outcome = _MonitorOutcome()

    for name in names:
        if name == "boundedness":
            if variant == "thm2":
                outcome.skipped.append("boundedness: not stated for theta extrapolation")
                continue
            try:
                C = compute_C(steps.sigma, steps.tau, problem.K_norm)
            except InvalidArgumentError as e:
                outcome.skipped.append(f"boundedness: {e}")
                continue
            monitor = monitor_thm1_boundedness if variant == "thm1" else monitor_thm3_boundedness
            outcome.verdicts.append(monitor(trace, C, point, steps.sigma, steps.tau))
            v0 = trace.records[0].V
            outcome.thm_bounds = [None if v0 is None else C * v0] * len(trace.records)

        elif name == "gap":
            if variant == "thm2":
                outcome.skipped.append("gap: not stated for theta extrapolation")
                continue
            B1, B2 = build_boxes(config, saddle, x0, y0)
            monitor = monitor_thm1_gap if variant == "thm1" else monitor_thm3_gap
            verdict = monitor(
                trace,
                problem,
                B1,
                B2,
                _oracle(config, problem),
                x0,
                y0,
                steps.sigma,
                steps.tau,
                config.analysis.gap_checkpoints,
            )
            outcome.verdicts.append(verdict)
            outcome.gap_points = {cp.M: (cp.gap, cp.bound) for cp in verdict.checkpoints}

        elif name == "linear_rate":
            if variant != "thm2" or steps.theta is None:
                outcome.skipped.append("linear_rate: only stated for theta extrapolation")
                continue
            try:
                constants = compute_a_omega(
                    steps.theta,
                    steps.sigma,
                    steps.tau,
                    problem.delta,
                    problem.gamma,
                    problem.K_norm,
                    L=problem.L,
                    T=T,
                )
            except (InvalidArgumentError, RuntimeError) as e:
                outcome.skipped.append(f"linear_rate: {e}")
                continue
            outcome.rate_constants = constants
            outcome.verdicts.append(
                monitor_thm2_linear(
                    trace, constants.omega, point, steps.sigma, steps.tau, problem.K_norm
                )
            )
            outcome.thm_bounds = linear_bound_series(trace, constants.omega)

    for reason in outcome.skipped:
        logger.warning(f"Monitor skipped, {reason}")
    return outcome


# === Entry points ===


def _base_summary(config: ExperimentConfig) -> RunSummaryData:
    return {
        "schema_version": get_schema_version(),
        "config": config_to_dict(config),
        "seed": config.seed,
        "forced": config.force,
    }


def _write_summary(config: ExperimentConfig, out_dir: Path, summary: RunSummaryData) -> Path:
    path = out_dir / config.output.summary_path
    write_json(path, summary)
    return path


def run_experiment(config: ExperimentConfig, out_dir: Path) -> ExperimentResult:
    """
    Run one experiment end to end and write its artifacts.

    Args:
        config: Validated config.
        out_dir: Directory the output paths are relative to.

    Returns:
        ExperimentResult with the exit status.

    Raises:
        ConfigParseError: If the config is inconsistent with the built problem.

    Side effects:
        Writes the summary always; the trace and plot data when the solver ran.
    """
    out_dir = Path(out_dir)
    summary = _base_summary(config)
    problem = build_experiment_problem(config)
    schedule = build_schedule(config)
    T = schedule.effective_T(problem.N)

    try:
        steps = resolve_step_sizes(config, problem, T)
    except InfeasibleStepSizeError as e:
        logger.error(str(e))
        summary.update(certified=False, exit_status=EXIT_INFEASIBLE, message=str(e))
        if e.last_certificate is not None:
            summary["certificate"] = e.last_certificate.to_data()
        path = _write_summary(config, out_dir, summary)
        return ExperimentResult(exit_status=EXIT_INFEASIBLE, summary=summary, paths=[path])

    summary["certified"] = steps.certified
    summary["certificate"] = steps.certificate.to_data()
    if not steps.certified:
        failed = ", ".join(steps.certificate.failed())
        if not config.force:
            message = f"Step sizes not certified (failing: {failed}); use --force to run anyway"
            logger.error(message)
            summary.update(exit_status=EXIT_FAIL, message=message)
            path = _write_summary(config, out_dir, summary)
            return ExperimentResult(
                exit_status=EXIT_FAIL, summary=summary, steps=steps, paths=[path]
            )
        logger.warning(f"Running uncertified step sizes (failing: {failed})")

    saddle = find_saddle(problem)
    summary["saddle"] = saddle.to_data()
    x0, y0 = initial_point(config)
    rule = ExtrapolationRule.for_variant(config.solver.variant, steps.theta)

    trace = run(
        problem,
        x0,
        y0,
        steps.sigma,
        steps.tau,
        rule,
        schedule,
        config.solver.max_iters,
        saddle=(saddle.x_hat, saddle.y_hat),
        header={"seed": config.seed, "variant": config.solver.variant},
    )

    final = trace.final
    primal, dual = saddle_residual(problem, final.x, final.y)
    summary.update(
        termination=trace.termination,
        iterations=trace.iterations,
        final_dist_x=final.dist_x,
        final_dist_y=final.dist_y,
        final_primal_residual=primal,
        final_dual_residual=dual,
        empirical_rate=empirical_rate(trace),
        sup_dist_x=sup_dist_x(trace),
        max_delay=trace.max_delay,
    )

    if trace.termination == "diverged":
        outcome = _MonitorOutcome()
        exit_status = EXIT_DIVERGED
        summary["message"] = trace.error or "diverged"
    else:
        outcome = _run_monitors(config, problem, trace, steps, saddle, x0, y0, T)
        exit_status = EXIT_PASS if all(v.passed for v in outcome.verdicts) else EXIT_FAIL

    summary.update(
        rate_constants=None if outcome.rate_constants is None else outcome.rate_constants.to_data(),
        monitors=[verdict.to_data() for verdict in outcome.verdicts],
        skipped_monitors=outcome.skipped,
        gap_checkpoints=[cp.to_data() for v in outcome.verdicts for cp in v.checkpoints],
        exit_status=exit_status,
    )

    output = config.output
    trace_path = out_dir / output.trace_path
    plot_path = out_dir / output.plotdata_path
    write_trace(trace_path, trace, outcome.gap_points, outcome.thm_bounds, output.record_wall_time)
    write_plotdata(plot_path, trace, outcome.gap_points, outcome.thm_bounds)
    summary_path = _write_summary(config, out_dir, summary)

    logger.info(f"Experiment finished with exit status {exit_status}")
    return ExperimentResult(
        exit_status=exit_status,
        summary=summary,
        steps=steps,
        trace=trace,
        verdicts=outcome.verdicts,
        paths=[trace_path, summary_path, plot_path],
    )


def load_iterate(path: Path, d1: int, d2: int) -> tuple[Vector, Vector]:
    """
    Read an iterate file {"x": [...], "y": [...]}.

    Raises:
        ConfigParseError: On unreadable JSON, unknown keys or wrong lengths.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        iterate = IterateFile.model_validate(data)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigParseError(f"cannot read iterate file {path}: {e}", key="<iterate>") from e
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or "<iterate>"
        raise ConfigParseError(str(error["msg"]), key=key) from e
    if len(iterate.x) != d1 or len(iterate.y) != d2:
        raise ConfigParseError(
            f"iterate must have dimensions ({d1}, {d2}), got ({len(iterate.x)}, {len(iterate.y)})",
            key="<iterate>",
        )
    return np.asarray(iterate.x, dtype=np.float64), np.asarray(iterate.y, dtype=np.float64)


def gap_at(config: ExperimentConfig, iterate_path: Path) -> GapEvaluation:
    """
    Restricted gap of the config's problem at a stored iterate.

    Boxes follow the same rule as run_experiment.

    Raises:
        ConfigParseError: On an invalid iterate file or boxes.
    """
    problem = build_experiment_problem(config)
    assert config.problem.d2 is not None
    x, y = load_iterate(iterate_path, config.problem.d1, config.problem.d2)
    saddle = find_saddle(problem)
    x0, y0 = initial_point(config)
    B1, B2 = build_boxes(config, saddle, x0, y0)
    return partial_gap(problem, B1, B2, x, y, _oracle(config, problem))
