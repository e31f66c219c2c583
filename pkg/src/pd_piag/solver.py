"""
PD-PIAG iteration engine.

    y_bar   = extrapolate(rule, y_k, y_{k-1})
    x_{k+1} = x_k - sigma g_k - sigma K^T y_bar
    y_{k+1} = prox_{tau h*}(y_k + tau K x_{k+1})

followed by a memory refresh chosen by the delay schedule. The core loop is
single-threaded and deterministic; monitors receive read-only states and
cannot influence anything but an early stop.
"""

import logging
import time
from collections.abc import Sequence
from typing import Any

import numpy as np

from src.analysis.saddle import saddle_residual
from src.analysis.trace import ConvergenceTrace, IterationRecord
from src.config import get_solver_config
from src.errors import DivergenceError, InvalidArgumentError
from src.pd_piag.extrapolation import ExtrapolationRule, extrapolate
from src.pd_piag.memory import GradientMemory, refresh_memory
from src.pd_piag.schedules import DelaySchedule
from src.pd_piag.state import IterateWindow, SolverState, frozen_copy, init_state
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.evaluation import apply_prox
from src.types import MonitorFn, Vector

logger = logging.getLogger(__name__)


def check_step_sizes(sigma: float, tau: float | None = None) -> None:
    """
    Require positive step sizes.

    Args:
        sigma: Primal step.
        tau: Dual step, or None when the method has no dual step.

    Raises:
        InvalidArgumentError: If a given step is not positive.
    """
    if not sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
    if tau is not None and not tau > 0:
        raise InvalidArgumentError(f"tau must be positive, got {tau}")


def all_finite(*arrays: Vector) -> bool:
    """True if no array holds a NaN or an infinity."""
    return all(bool(np.all(np.isfinite(array))) for array in arrays)


def advance_memory(
    state: SolverState,
    problem: SaddleProblem,
    schedule: DelaySchedule,
    x_next: Vector,
) -> tuple[GradientMemory, IterateWindow]:
    """
    Push x_{k+1} into the window and apply the schedule's refresh.

    Args:
        state: State before the step.
        problem: Saddle problem.
        schedule: Delay schedule.
        x_next: New primal iterate.

    Returns:
        Tuple of (new memory, new window).
    """
    history = state.history.push(x_next)
    plan = schedule.refresh_plan(state.k, state.memory.stamps)
    memory = refresh_memory(
        state.memory, plan.indices, history.at(plan.source), plan.source, problem
    )
    return memory, history


def pd_piag_step(
    state: SolverState,
    problem: SaddleProblem,
    sigma: float,
    tau: float,
    rule: ExtrapolationRule,
    schedule: DelaySchedule,
) -> SolverState:
    """
    One PD-PIAG step.

    Args:
        state: Current state.
        problem: Saddle problem.
        sigma: Primal step.
        tau: Dual step.
        rule: Dual extrapolation rule.
        schedule: Delay schedule.

    Returns:
        State k + 1.

    Raises:
        InvalidArgumentError: On non-positive steps.
        DivergenceError: If the new iterate or aggregate is not finite.
    """
    check_step_sizes(sigma, tau)
    coupling = problem.coupling

    with np.errstate(over="ignore", invalid="ignore"):
        y_bar = extrapolate(rule, state.y, state.y_prev)
        x_next = state.x - sigma * state.memory.aggregate - sigma * coupling.adjoint(y_bar)
        y_next = apply_prox(problem.conjugate, tau, state.y + tau * coupling.forward(x_next))

    if not all_finite(x_next, y_next):
        raise DivergenceError(f"Non-finite iterate at step {state.k + 1}", last_state=state)

    with np.errstate(over="ignore", invalid="ignore"):
        memory, history = advance_memory(state, problem, schedule, x_next)
    if not all_finite(memory.aggregate):
        raise DivergenceError(
            f"Non-finite gradient aggregate at step {state.k + 1}", last_state=state
        )

    return SolverState(
        k=state.k + 1,
        x=frozen_copy(x_next),
        y=frozen_copy(y_next),
        y_prev=state.y,
        memory=memory,
        history=history,
    )


def _record(trace: ConvergenceTrace, state: SolverState, started: float) -> None:
    dist_x, dist_y, lyapunov = trace.distances(state.x, state.y)
    trace.append(
        IterationRecord(
            k=state.k,
            x=state.x,
            y=state.y,
            delays=state.delays(),
            aggregate=state.memory.aggregate,
            dist_x=dist_x,
            dist_y=dist_y,
            V=lyapunov,
            wall_ms=(time.perf_counter() - started) * 1000.0,
        )
    )


def _notify(monitors: Sequence[MonitorFn], state: SolverState, trace: ConvergenceTrace) -> bool:
    stop = False
    for monitor in monitors:
        try:
            if monitor(state):
                stop = True
        except Exception as e:
            trace.monitor_errors += 1
            logger.error(f"Monitor failed at k={state.k}: {e}")
    return stop


def run(
    problem: SaddleProblem,
    x0: Vector,
    y0: Vector,
    sigma: float,
    tau: float,
    rule: ExtrapolationRule,
    schedule: DelaySchedule,
    max_iters: int,
    monitors: Sequence[MonitorFn] = (),
    saddle: tuple[Vector, Vector] | None = None,
    header: dict[str, Any] | None = None,
) -> ConvergenceTrace:
    """
    Iterate pd_piag_step up to max_iters times and record every iterate.

    Step sizes are taken as given; certification is the caller's job.

    Args:
        problem: Saddle problem.
        x0: Primal start.
        y0: Dual start.
        sigma: Primal step.
        tau: Dual step.
        rule: Dual extrapolation rule.
        schedule: Delay schedule.
        max_iters: Step budget.
        monitors: Callbacks invoked with each read-only state; True stops the run.
        saddle: Reference (x_hat, y_hat) for distances and V_k.
        header: Extra self-description merged into the trace header (config, seed).

    Returns:
        Closed ConvergenceTrace; divergence is recorded as its termination reason.
    """
    if max_iters < 1:
        raise InvalidArgumentError(f"max_iters must be at least 1, got {max_iters}")
    check_step_sizes(sigma, tau)

    T = schedule.effective_T(problem.N)
    state = init_state(problem, x0, y0, window_size=T + 1)
    trace = ConvergenceTrace(
        header={
            "sigma": sigma,
            "tau": tau,
            "rule": rule.kind,
            "theta": rule.theta,
            "schedule": schedule.describe(),
            "T": T,
            "max_iters": max_iters,
            **(header or {}),
        },
        sigma=sigma,
        tau=tau,
        x_hat=None if saddle is None else frozen_copy(saddle[0]),
        y_hat=None if saddle is None else frozen_copy(saddle[1]),
    )

    log_every = get_solver_config()["log_every"]
    logger.info(
        f"Starting PD-PIAG: N={problem.N}, d1={problem.d1}, d2={problem.d2}, "
        f"sigma={sigma:.6g}, tau={tau:.6g}, rule={rule.kind}, schedule={schedule.kind}, T={T}"
    )

    started = time.perf_counter()
    _record(trace, state, started)
    if _notify(monitors, state, trace):
        trace.close("monitor_stop")
        return trace

    for _ in range(max_iters):
        try:
            state = pd_piag_step(state, problem, sigma, tau, rule, schedule)
        except DivergenceError as e:
            logger.warning(f"Run diverged: {e}")
            trace.close("diverged", error=str(e))
            return trace

        _record(trace, state, started)
        if log_every and state.k % log_every == 0:
            logger.debug(f"k={state.k} V={trace.final.V}")
        if _notify(monitors, state, trace):
            logger.info(f"Monitor requested stop at k={state.k}")
            trace.close("monitor_stop")
            return trace

    trace.close("max_iters")
    logger.info(f"Finished {trace.iterations} iterations")
    return trace


def stop_on_residual(problem: SaddleProblem, tol: float, tau_ref: float = 1.0) -> MonitorFn:
    """
    Monitor that stops a run once both saddle residuals drop to tol.

    Args:
        problem: Saddle problem being solved.
        tol: Residual threshold.
        tau_ref: Reference dual step of the dual residual.

    Returns:
        Callback for run().
    """

    def monitor(state: SolverState) -> bool:
        primal, dual = saddle_residual(problem, state.x, state.y, tau_ref)
        return primal <= tol and dual <= tol

    return monitor
