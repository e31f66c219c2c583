"""Primitive evaluations consumed by solvers and monitors.

Pure functions of their inputs. Summations over components run in
ascending index order with sequential accumulation so results are
bit-reproducible across runs.
"""

import numpy as np

from src.errors import InvalidArgumentError
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.conjugates import ConjugateTerm
from src.types import Vector


def check_primal(problem: SaddleProblem, x: Vector) -> None:
    """Raise InvalidArgumentError unless x lives in R^{d1}."""
    if np.shape(x) != (problem.d1,):
        raise InvalidArgumentError(f"x must have shape ({problem.d1},), got {np.shape(x)}")


def check_dual(problem: SaddleProblem, y: Vector) -> None:
    """Raise InvalidArgumentError unless y lives in R^{d2}."""
    if np.shape(y) != (problem.d2,):
        raise InvalidArgumentError(f"y must have shape ({problem.d2},), got {np.shape(y)}")


def eval_smooth(problem: SaddleProblem, x: Vector) -> float:
    """
    Evaluate f(x) = sum_i f_i(x).

    Args:
        problem: Saddle problem.
        x: Primal point.

    Returns:
        Sum of component values.
    """
    check_primal(problem, x)
    total = 0.0
    for component in problem.components:
        total += component.value(x)
    return total


def grad_full(problem: SaddleProblem, x: Vector) -> Vector:
    """
    Zero-delay gradient sum_i grad f_i(x).

    Args:
        problem: Saddle problem.
        x: Primal point.

    Returns:
        Gradient of f at x.

    Raises:
        InvalidArgumentError: On dimension mismatch.
    """
    check_primal(problem, x)
    total = np.zeros(problem.d1)
    for component in problem.components:
        total = total + component.gradient(x)
    return total


def eval_lagrangian(problem: SaddleProblem, x: Vector, y: Vector) -> float:
    """
    Evaluate L(x, y) = f(x) + <Kx, y> - h*(y).

    Args:
        problem: Saddle problem.
        x: Primal point.
        y: Dual point.

    Returns:
        Lagrangian value; -inf when h*(y) = +inf.

    Raises:
        InvalidArgumentError: On dimension mismatch.
    """
    check_primal(problem, x)
    check_dual(problem, y)

    conjugate_value = problem.conjugate.value(y)
    if np.isposinf(conjugate_value):
        return float("-inf")

    coupling_value = float(np.dot(problem.coupling.forward(x), y))
    return eval_smooth(problem, x) + coupling_value - conjugate_value


def apply_prox(term: ConjugateTerm, tau: float, v: Vector) -> Vector:
    """
    Proximal operator of tau * h*.

    Args:
        term: Conjugate term h*.
        tau: Positive step.
        v: Point.

    Returns:
        argmin_u h*(u) + |u - v|^2 / (2 tau).

    Raises:
        InvalidArgumentError: If tau <= 0.
    """
    if not tau > 0:
        raise InvalidArgumentError(f"tau must be positive, got {tau}")
    return term.prox(tau, np.asarray(v, dtype=np.float64))


def apply_primal_prox(term: ConjugateTerm, sigma: float, v: Vector) -> Vector:
    """
    Proximal operator of sigma * h via the Moreau identity.

        prox_{sigma h}(v) = v - sigma * prox_{h*/sigma}(v / sigma)

    Args:
        term: Conjugate term h*.
        sigma: Positive step.
        v: Point.

    Returns:
        prox_{sigma h}(v).
    """
    if not sigma > 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
    v = np.asarray(v, dtype=np.float64)
    return v - sigma * apply_prox(term, 1.0 / sigma, v / sigma)
