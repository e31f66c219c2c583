"""
Gradient memory table.

Holds one stored gradient e_i per component, the iteration stamp s_i of the
point it was evaluated at, and the cached aggregate g = sum_i e_i. Refreshes
update the aggregate incrementally (g + grad f_i(x) - e_i), one index at a
time in ascending order.
"""

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.evaluation import check_primal
from src.types import Matrix, Vector


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class GradientMemory:
    """
    Immutable snapshot of the memory table.

    Args:
        entries: (N, d1) array, row i is e_i.
        stamps: Iteration index of the point behind each entry.
        aggregate: Cached sum of the entries.
    """

    entries: Matrix
    stamps: tuple[int, ...]
    aggregate: Vector

    @property
    def N(self) -> int:
        """Number of components."""
        return len(self.stamps)

    def recompute_aggregate(self) -> Vector:
        """Fresh sum of the entries in ascending index order."""
        total = np.zeros(self.entries.shape[1])
        for entry in self.entries:
            total = total + entry
        return total

    def delays(self, k: int) -> tuple[int, ...]:
        """Staleness k - s_i of every entry at iteration k."""
        return tuple(k - stamp for stamp in self.stamps)


def init_memory(problem: SaddleProblem, x0: Vector) -> GradientMemory:
    """
    Fill the table with gradients at x0, all stamps 0.

    Args:
        problem: Saddle problem.
        x0: Starting primal point.

    Returns:
        GradientMemory with aggregate equal to grad_full(problem, x0).
    """
    check_primal(problem, x0)
    entries = np.empty((problem.N, problem.d1))
    aggregate = np.zeros(problem.d1)
    for i, component in enumerate(problem.components):
        entries[i] = component.gradient(x0)
        aggregate = aggregate + entries[i]

    return GradientMemory(
        entries=_frozen(entries),
        stamps=(0,) * problem.N,
        aggregate=_frozen(aggregate),
    )


def refresh_memory(
    memory: GradientMemory,
    indices: Iterable[int],
    x_new: Vector,
    k_new: int,
    problem: SaddleProblem,
) -> GradientMemory:
    """
    Replace e_i by grad f_i(x_new) for each refreshed index.

    Component indices are 0-based.

    Args:
        memory: Current table.
        indices: Components to refresh.
        x_new: Point the new gradients are taken at.
        k_new: Iteration index of x_new, becomes the new stamp.
        problem: Saddle problem supplying the gradients.

    Returns:
        New GradientMemory; the input is left untouched.

    Raises:
        InvalidArgumentError: If an index is out of range or a stamp would not advance.
    """
    ordered = sorted(set(indices))
    if not ordered:
        return memory

    check_primal(problem, x_new)
    for i in ordered:
        if not 0 <= i < memory.N:
            raise InvalidArgumentError(f"Component index {i} out of range [0, {memory.N})")
        if k_new <= memory.stamps[i]:
            raise InvalidArgumentError(
                f"Refresh stamp {k_new} must exceed current stamp {memory.stamps[i]} "
                f"of component {i}"
            )

    entries = np.array(memory.entries, copy=True)
    stamps = list(memory.stamps)
    aggregate = np.array(memory.aggregate, copy=True)
    for i in ordered:
        gradient = problem.components[i].gradient(x_new)
        aggregate = aggregate + gradient - entries[i]
        entries[i] = gradient
        stamps[i] = k_new

    return GradientMemory(
        entries=_frozen(entries),
        stamps=tuple(stamps),
        aggregate=_frozen(aggregate),
    )
