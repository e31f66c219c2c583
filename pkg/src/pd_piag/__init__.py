"""
PD-PIAG solver: gradient memory, delay schedules, extrapolation rules,
the iteration engine and the FBS/PIAG baselines.

Usage:
    from src.pd_piag import DelaySchedule, ExtrapolationRule, run

    trace = run(problem, x0, y0, sigma, tau, ExtrapolationRule.pdhg(),
                DelaySchedule.cyclic(), max_iters=1000)
"""

from src.pd_piag.baselines import fbs_step, piag_step, require_identity_coupling
from src.pd_piag.extrapolation import ExtrapolationRule, extrapolate
from src.pd_piag.memory import GradientMemory, init_memory, refresh_memory
from src.pd_piag.schedules import DelaySchedule, RefreshPlan
from src.pd_piag.solver import pd_piag_step, run, stop_on_residual
from src.pd_piag.state import IterateWindow, SolverState, init_state

__all__ = [
    # Memory
    "GradientMemory",
    "init_memory",
    "refresh_memory",
    # Schedules
    "DelaySchedule",
    "RefreshPlan",
    # Extrapolation
    "ExtrapolationRule",
    "extrapolate",
    # State
    "IterateWindow",
    "SolverState",
    "init_state",
    # Solver
    "pd_piag_step",
    "run",
    "stop_on_residual",
    # Baselines
    "fbs_step",
    "piag_step",
    "require_identity_coupling",
]
