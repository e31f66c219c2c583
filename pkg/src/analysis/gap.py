"""
Restricted primal-dual gap

    G(x, y) = max_{y' in B2} L(x, y') - min_{x' in B1} L(x', y)

The dual inner maximum is separable for every catalog conjugate and is
solved in closed form. The primal inner minimum is closed form for diagonal
quadratic f (separable_exact) and otherwise solved by accelerated projected
gradient with an a-posteriori accuracy bound (projected_gradient).
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.analysis.boxes import BoxSet
from src.config import get_analysis_config
from src.errors import InvalidArgumentError
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.evaluation import check_dual, check_primal, eval_smooth, grad_full
from src.types import OracleStrategy, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapOracle:
    """
    Strategy for the inner problems.

    Args:
        strategy: "separable_exact" or "projected_gradient".
        tol: Target accuracy of projected_gradient (default from config).
        max_iters: Iteration cap of projected_gradient (default from config).
    """

    strategy: OracleStrategy = "separable_exact"
    tol: float | None = None
    max_iters: int | None = None

    @classmethod
    def for_problem(cls, problem: SaddleProblem) -> "GapOracle":
        """separable_exact when the problem supports it, projected_gradient otherwise."""
        if supports_separable_exact(problem):
            return cls(strategy="separable_exact")
        return cls(strategy="projected_gradient")


@dataclass(frozen=True)
class GapEvaluation:
    """
    One gap value with its accuracy.

    Args:
        value: Gap estimate.
        dual_max: max_{y'} L(x, y').
        primal_min: min_{x'} L(x', y) (an upper estimate when inexact).
        achieved_tol: Bound on |value - true gap|.
        exact: Whether the oracle met its tolerance.
        inside: Whether (x, y) lies in B1 x B2.
    """

    value: float
    dual_max: float
    primal_min: float
    achieved_tol: float
    exact: bool
    inside: bool


def supports_separable_exact(problem: SaddleProblem) -> bool:
    """Diagonal quadratic components and a separable conjugate."""
    data = problem.quadratic_data()
    return data is not None and data.is_diagonal() and problem.conjugate.is_separable()


def _primal_min_separable(
    problem: SaddleProblem, w: Vector, B1: BoxSet
) -> Vector:
    data = problem.quadratic_data()
    if data is None or not data.is_diagonal():
        raise InvalidArgumentError("separable_exact needs diagonal quadratic components")

    curvature = np.diag(data.hessian)
    slope = w - data.linear
    x = np.where(slope > 0, B1.lower, B1.upper)
    curved = curvature > 0
    vertex = -slope[curved] / curvature[curved]
    x[curved] = np.clip(vertex, B1.lower[curved], B1.upper[curved])
    return x


def _primal_min_projected(
    problem: SaddleProblem,
    w: Vector,
    B1: BoxSet,
    start: Vector,
    tol: float,
    max_iters: int,
) -> tuple[Vector, float]:
    """FISTA with function-value restart on f(x') + <w, x'>."""
    step = 1.0 / problem.L

    def objective(z: Vector) -> float:
        return eval_smooth(problem, z) + float(np.dot(w, z))

    x = B1.project(start)
    v = x.copy()
    t = 1.0
    current = objective(x)
    achieved = np.inf
    for _ in range(max_iters):
        x_next = B1.project(v - step * (grad_full(problem, v) + w))
        # |phi(x+) - phi*| <= |gradient mapping| * |v - x*| and x* lies in the box
        farthest = np.sqrt(B1.max_sq_distance(v))
        achieved = float(np.linalg.norm(v - x_next)) / step * farthest
        next_value = objective(x_next)
        if achieved <= tol:
            return x_next, achieved

        if next_value > current:
            # Restart momentum
            t = 1.0
            v = x.copy()
            continue
        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        v = x_next + ((t - 1.0) / t_next) * (x_next - x)
        x, t, current = x_next, t_next, next_value

    return x, achieved


def partial_gap(
    problem: SaddleProblem,
    B1: BoxSet,
    B2: BoxSet,
    x: Vector,
    y: Vector,
    oracle: GapOracle | None = None,
) -> GapEvaluation:
    """
    Evaluate the restricted gap at (x, y).

    Args:
        problem: Saddle problem.
        B1: Primal box.
        B2: Dual box.
        x: Primal point.
        y: Dual point.
        oracle: Inner-problem strategy (default chosen per problem).

    Returns:
        GapEvaluation; inexact results are flagged and logged, never silent.

    Raises:
        InvalidArgumentError: On dimension mismatch or an inapplicable strategy.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    check_primal(problem, x)
    check_dual(problem, y)
    if B1.dim != problem.d1 or B2.dim != problem.d2:
        raise InvalidArgumentError(
            f"Boxes have dimensions ({B1.dim}, {B2.dim}), expected ({problem.d1}, {problem.d2})"
        )
    if oracle is None:
        oracle = GapOracle.for_problem(problem)

    inside = B1.contains(x) and B2.contains(y)
    term = problem.conjugate
    coupling = problem.coupling

    conjugate_max, _ = term.box_max(coupling.forward(x), B2.lower, B2.upper)
    dual_max = eval_smooth(problem, x) + conjugate_max

    conjugate_at_y = term.value(y)
    w = coupling.adjoint(y)
    achieved = 0.0
    if np.isposinf(conjugate_at_y):
        primal_min = float("-inf")
    elif oracle.strategy == "separable_exact":
        x_min = _primal_min_separable(problem, w, B1)
        primal_min = eval_smooth(problem, x_min) + float(np.dot(w, x_min)) - conjugate_at_y
    elif oracle.strategy == "projected_gradient":
        cfg = get_analysis_config()
        tol = oracle.tol if oracle.tol is not None else cfg["oracle_tol"]
        max_iters = oracle.max_iters if oracle.max_iters is not None else cfg["oracle_max_iters"]
        x_min, achieved = _primal_min_projected(problem, w, B1, x, tol, max_iters)
        primal_min = eval_smooth(problem, x_min) + float(np.dot(w, x_min)) - conjugate_at_y
    else:
        raise InvalidArgumentError(f"Unknown gap oracle strategy: {oracle.strategy}")

    exact = oracle.strategy == "separable_exact" or achieved <= (
        oracle.tol if oracle.tol is not None else get_analysis_config()["oracle_tol"]
    )
    if not exact:
        logger.warning(f"Gap oracle inexact: achieved_tol={achieved:.3e}")

    return GapEvaluation(
        value=dual_max - primal_min,
        dual_max=dual_max,
        primal_min=primal_min,
        achieved_tol=achieved,
        exact=exact,
        inside=inside,
    )
