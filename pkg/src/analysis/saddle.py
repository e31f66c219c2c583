"""
Saddle points and optimality residuals.

    primal residual  |grad f(x) + K^T y|
    dual residual    |y - prox_{tau h*}(y + tau K x)|

Quadratic/quadratic problems have a closed-form saddle; everything else gets
a reference saddle from a zero-delay PDHG run driven to tight residuals.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.config import get_analysis_config
from src.errors import InvalidArgumentError
from src.saddle_problem.components import SaddleProblem
from src.saddle_problem.conjugates import QuadraticConjugate
from src.saddle_problem.evaluation import apply_prox, check_dual, check_primal, grad_full
from src.types import Matrix, SaddleData, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SaddleCertificate:
    """
    Saddle point with its optimality residuals (reference tau = 1).

    Args:
        x_hat: Primal saddle point.
        y_hat: Dual saddle point.
        primal_residual: |grad f(x_hat) + K^T y_hat|.
        dual_residual: |y_hat - prox_{h*}(y_hat + K x_hat)|.
        certified: Both residuals within the configured tolerance.
    """

    x_hat: Vector
    y_hat: Vector
    primal_residual: float
    dual_residual: float
    certified: bool

    def to_data(self) -> SaddleData:
        """Serialize."""
        return {
            "x_hat": [float(v) for v in self.x_hat],
            "y_hat": [float(v) for v in self.y_hat],
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "certified": self.certified,
        }


def saddle_residual(
    problem: SaddleProblem, x: Vector, y: Vector, tau_ref: float = 1.0
) -> tuple[float, float]:
    """
    Optimality residuals of (x, y).

    Args:
        problem: Saddle problem.
        x: Primal point.
        y: Dual point.
        tau_ref: Dual step of the fixed-point restatement.

    Returns:
        Tuple of (primal_residual, dual_residual).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    check_primal(problem, x)
    check_dual(problem, y)
    coupling = problem.coupling

    primal = float(np.linalg.norm(grad_full(problem, x) + coupling.adjoint(y)))
    shifted = y + tau_ref * coupling.forward(x)
    dual = float(np.linalg.norm(y - apply_prox(problem.conjugate, tau_ref, shifted)))
    return primal, dual


def _certify(primal: float, dual: float) -> bool:
    tol = get_analysis_config()["saddle_residual_tol"]
    return primal <= tol and dual <= tol


def saddle_quadratic(A: Matrix, b: Vector, K: Matrix, gamma: float) -> SaddleCertificate:
    """
    Closed-form saddle of 1/2 x^T A x - b^T x + <Kx, y> - (gamma/2)|y|^2.

        x_hat = (A + K^T K / gamma)^{-1} b,  y_hat = K x_hat / gamma

    Args:
        A: Symmetric positive definite (N-summed) Hessian.
        b: Summed linear term.
        K: Coupling matrix.
        gamma: Positive modulus of h*.

    Returns:
        SaddleCertificate.

    Raises:
        InvalidArgumentError: If gamma <= 0, shapes disagree or the system is singular.
    """
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    K = np.asarray(K, dtype=np.float64)
    if not gamma > 0:
        raise InvalidArgumentError(f"gamma must be positive, got {gamma}")
    if A.shape != (b.shape[0], b.shape[0]) or K.ndim != 2 or K.shape[1] != b.shape[0]:
        raise InvalidArgumentError(f"Incompatible shapes A={A.shape}, b={b.shape}, K={K.shape}")

    try:
        x_hat = np.linalg.solve(A + K.T @ K / gamma, b)
    except np.linalg.LinAlgError as e:
        raise InvalidArgumentError(f"Saddle system is singular: {e}") from e
    y_hat = K @ x_hat / gamma

    primal = float(np.linalg.norm(A @ x_hat - b + K.T @ y_hat))
    dual = float(np.linalg.norm(y_hat - (y_hat + K @ x_hat) / (1.0 + gamma)))
    return SaddleCertificate(
        x_hat=x_hat,
        y_hat=y_hat,
        primal_residual=primal,
        dual_residual=dual,
        certified=_certify(primal, dual),
    )


def analytic_saddle(problem: SaddleProblem) -> SaddleCertificate | None:
    """
    Closed-form saddle when f is quadratic, h* = (gamma/2)|y|^2 with gamma > 0
    and K is a dense matrix; None otherwise.
    """
    data = problem.quadratic_data()
    conjugate = problem.conjugate
    matrix = problem.coupling.matrix
    if data is None or matrix is None:
        return None
    if not isinstance(conjugate, QuadraticConjugate) or conjugate.gamma <= 0:
        return None

    closed_form = saddle_quadratic(data.hessian, data.linear, matrix, conjugate.gamma)
    primal, dual = saddle_residual(problem, closed_form.x_hat, closed_form.y_hat)
    return SaddleCertificate(
        x_hat=closed_form.x_hat,
        y_hat=closed_form.y_hat,
        primal_residual=primal,
        dual_residual=dual,
        certified=_certify(primal, dual),
    )


def reference_saddle(
    problem: SaddleProblem,
    tol: float | None = None,
    max_iters: int | None = None,
    check_every: int = 10,
) -> SaddleCertificate:
    """
    Saddle point from a zero-delay PDHG run.

    Uses sigma = tau = 0.9 / (L + |K|) and stops once both residuals are <= tol.

    Args:
        problem: Saddle problem.
        tol: Residual target (default from config).
        max_iters: Iteration cap (default from config).
        check_every: Residual evaluation cadence.

    Returns:
        SaddleCertificate; `certified` reflects the configured certification tolerance.
    """
    cfg = get_analysis_config()
    if tol is None:
        tol = cfg["reference_tol"]
    if max_iters is None:
        max_iters = cfg["reference_max_iters"]

    coupling = problem.coupling
    step = 0.9 / (problem.L + problem.K_norm)
    x = np.zeros(problem.d1)
    y = np.zeros(problem.d2)
    y_prev = y
    primal, dual = saddle_residual(problem, x, y)
    iterations = 0
    for iterations in range(1, max_iters + 1):
        x = x - step * (grad_full(problem, x) + coupling.adjoint(2.0 * y - y_prev))
        y_prev = y
        y = apply_prox(problem.conjugate, step, y + step * coupling.forward(x))
        if iterations % check_every == 0:
            primal, dual = saddle_residual(problem, x, y)
            if primal <= tol and dual <= tol:
                break

    primal, dual = saddle_residual(problem, x, y)
    if not (primal <= tol and dual <= tol):
        logger.warning(
            f"Reference saddle stopped after {iterations} iterations "
            f"with residuals ({primal:.3e}, {dual:.3e})"
        )
    else:
        logger.info(
            f"Reference saddle reached residuals ({primal:.3e}, {dual:.3e}) "
            f"in {iterations} iterations"
        )

    return SaddleCertificate(
        x_hat=x,
        y_hat=y,
        primal_residual=primal,
        dual_residual=dual,
        certified=_certify(primal, dual),
    )


def find_saddle(problem: SaddleProblem) -> SaddleCertificate:
    """Analytic saddle when available, reference saddle otherwise."""
    closed_form = analytic_saddle(problem)
    if closed_form is not None:
        return closed_form
    return reference_saddle(problem)
