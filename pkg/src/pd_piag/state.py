"""
Solver state and the window of recent primal iterates.

States are immutable snapshots; arrays are marked read-only so a monitor
holding a state cannot change the trajectory.
"""

from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError
from src.pd_piag.memory import GradientMemory, init_memory
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.evaluation import check_dual, check_primal
from src.types import Vector


def frozen_copy(v: Vector) -> Vector:
    """Read-only float64 copy."""
    array = np.array(v, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class IterateWindow:
    """
    Ring of the last `size` primal iterates x_{first_k}, ..., x_{first_k + count - 1}.

    Args:
        size: Capacity (T + 1).
        first_k: Iteration index of the oldest stored iterate.
        iterates: Stored iterates, oldest first.
    """

    size: int
    first_k: int
    iterates: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.size <= 0:
            raise InvalidArgumentError(f"Window size must be positive, got {self.size}")

    @classmethod
    def start(cls, x0: Vector, size: int) -> "IterateWindow":
        """Window holding only x_0."""
        return cls(size=size, first_k=0, iterates=(frozen_copy(x0),))

    @property
    def last_k(self) -> int:
        """Iteration index of the newest iterate."""
        return self.first_k + len(self.iterates) - 1

    def push(self, x: Vector) -> "IterateWindow":
        """
        Append the next iterate, dropping the oldest when full.

        Args:
            x: Iterate x_{last_k + 1}.

        Returns:
            New window.
        """
        iterates = (*self.iterates, frozen_copy(x))
        first_k = self.first_k
        if len(iterates) > self.size:
            iterates = iterates[1:]
            first_k += 1
        return IterateWindow(size=self.size, first_k=first_k, iterates=iterates)

    def at(self, j: int) -> Vector:
        """
        Iterate x_j, with negative j clamped to x_0.

        Raises:
            InvalidArgumentError: If x_j has left the window or is in the future.
        """
        j = max(j, 0)
        if not self.first_k <= j <= self.last_k:
            raise InvalidArgumentError(
                f"Iterate {j} not in window [{self.first_k}, {self.last_k}]"
            )
        return self.iterates[j - self.first_k]


@dataclass(frozen=True)
class SolverState:
    """
    Snapshot after k steps.

    Args:
        k: Iteration counter.
        x: Primal iterate x_k.
        y: Dual iterate y_k.
        y_prev: Dual iterate y_{k-1} (y_0 at k = 0).
        memory: Gradient memory whose aggregate is g_k.
        history: Recent primal iterates.
    """

    k: int
    x: Vector
    y: Vector
    y_prev: Vector
    memory: GradientMemory
    history: IterateWindow

    def delays(self) -> tuple[int, ...]:
        """Current staleness of every memory entry."""
        return self.memory.delays(self.k)


def init_state(
    problem: SaddleProblem,
    x0: Vector,
    y0: Vector,
    window_size: int = 1,
) -> SolverState:
    """
    Initial state: memory at x0, y_prev = y0, k = 0.

    Args:
        problem: Saddle problem.
        x0: Primal start.
        y0: Dual start.
        window_size: Iterate window capacity (T + 1 of the schedule).

    Returns:
        SolverState.

    Raises:
        InvalidArgumentError: On dimension mismatch.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    y0 = np.asarray(y0, dtype=np.float64)
    check_primal(problem, x0)
    check_dual(problem, y0)

    y = frozen_copy(y0)
    return SolverState(
        k=0,
        x=frozen_copy(x0),
        y=y,
        y_prev=y,
        memory=init_memory(problem, x0),
        history=IterateWindow.start(x0, window_size),
    )
