"""
Forward-backward splitting and PIAG baselines for K = I.

The primal prox of h is recovered from the conjugate's prox through the
Moreau identity. Both methods use stepsize sigma with the 1/(2 sigma)
quadratic coefficient.
"""

import numpy as np

from src.errors import BaselineUnavailableError, DivergenceError
from src.pd_piag.schedules import DelaySchedule
from src.pd_piag.solver import advance_memory, all_finite, check_step_sizes
from src.pd_piag.state import SolverState, frozen_copy
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.evaluation import apply_primal_prox, check_primal, grad_full
from src.types import Vector


def require_identity_coupling(problem: SaddleProblem) -> None:
    """
    Refuse problems whose coupling is not the identity.

    Raises:
        BaselineUnavailableError: If d1 != d2 or K is not declared as I.
    """
    if problem.d1 != problem.d2 or not problem.coupling.is_identity:
        raise BaselineUnavailableError(
            f"Baselines need K = I (got d1={problem.d1}, d2={problem.d2}, "
            f"identity={problem.coupling.is_identity})"
        )


def fbs_step(problem: SaddleProblem, x: Vector, stepsize: float) -> Vector:
    """
    x+ = prox_{sigma h}(x - sigma grad f(x)).

    Args:
        problem: Problem with K = I.
        x: Current point.
        stepsize: sigma > 0.

    Returns:
        Next FBS iterate.
    """
    require_identity_coupling(problem)
    check_step_sizes(stepsize)
    check_primal(problem, x)
    return apply_primal_prox(problem.conjugate, stepsize, x - stepsize * grad_full(problem, x))


def piag_step(
    state: SolverState,
    problem: SaddleProblem,
    sigma: float,
    schedule: DelaySchedule,
) -> SolverState:
    """
    x_{k+1} = prox_{sigma h}(x_k - sigma g_k), then the schedule's memory refresh.

    The dual fields of the state are carried through unchanged.

    Args:
        state: Current state (memory semantics shared with PD-PIAG).
        problem: Problem with K = I.
        sigma: Step size.
        schedule: Delay schedule.

    Returns:
        State k + 1.

    Raises:
        BaselineUnavailableError: If K is not the identity.
        DivergenceError: If the new iterate is not finite.
    """
    require_identity_coupling(problem)
    check_step_sizes(sigma)

    with np.errstate(over="ignore", invalid="ignore"):
        x_next = apply_primal_prox(
            problem.conjugate, sigma, state.x - sigma * state.memory.aggregate
        )
    if not all_finite(x_next):
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
        y=state.y,
        y_prev=state.y,
        memory=memory,
        history=history,
    )
