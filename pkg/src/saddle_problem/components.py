"""
Problem data model: smooth components, the saddle problem container.

    min_x max_y  sum_i f_i(x) + <Kx, y> - h*(y)

All types are immutable after construction and safe to share across threads.
"""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from src.errors import InvalidArgumentError
from src.saddle_problem.conjugates import ConjugateTerm
from src.saddle_problem.linear_maps import LinearMap
from src.types import GradientFn, Matrix, ValueFn, Vector


@dataclass(frozen=True)
class QuadraticData:
    """f(x) = 1/2 x^T Q x - q^T x + c, kept for closed-form oracles."""

    hessian: Matrix
    linear: Vector
    offset: float = 0.0

    def is_diagonal(self) -> bool:
        """True when Q has no off-diagonal entries."""
        off_diag = self.hessian - np.diag(np.diag(self.hessian))
        return not bool(np.any(off_diag))


@dataclass(frozen=True)
class SmoothComponent:
    """
    One summand f_i of the smooth part.

    Args:
        value_fn: x -> f_i(x).
        gradient_fn: x -> grad f_i(x).
        L: Smoothness constant (A1).
        delta: Strong-convexity modulus, may be negative (B1).
        quadratic: Closed-form data when f_i is quadratic.
    """

    value_fn: ValueFn
    gradient_fn: GradientFn
    L: float
    delta: float
    quadratic: QuadraticData | None = None

    def __post_init__(self) -> None:
        if self.L < 0:
            raise InvalidArgumentError(f"L_i must be non-negative, got {self.L}")
        if self.delta > self.L:
            raise InvalidArgumentError(f"delta_i ({self.delta}) must not exceed L_i ({self.L})")

    def value(self, x: Vector) -> float:
        """Evaluate f_i(x)."""
        return float(self.value_fn(x))

    def gradient(self, x: Vector) -> Vector:
        """Evaluate grad f_i(x)."""
        return np.asarray(self.gradient_fn(x), dtype=np.float64)


def create_quadratic_component(
    hessian: Matrix,
    linear: Vector,
    offset: float = 0.0,
    L: float | None = None,
    delta: float | None = None,
) -> SmoothComponent:
    """
    Build f(x) = 1/2 x^T Q x - q^T x + c.

    Args:
        hessian: Symmetric matrix Q.
        linear: Vector q.
        offset: Constant c.
        L: Declared smoothness constant (default: largest eigenvalue of Q).
        delta: Declared modulus (default: smallest eigenvalue of Q).

    Returns:
        SmoothComponent carrying its QuadraticData.
    """
    q_matrix = np.array(hessian, dtype=np.float64)
    q_vector = np.array(linear, dtype=np.float64)
    if q_matrix.ndim != 2 or q_matrix.shape[0] != q_matrix.shape[1]:
        raise InvalidArgumentError(f"Hessian must be square, got shape {q_matrix.shape}")
    if q_vector.shape != (q_matrix.shape[0],):
        raise InvalidArgumentError(
            f"Linear term must have size {q_matrix.shape[0]}, got {q_vector.shape}"
        )
    if not np.allclose(q_matrix, q_matrix.T):
        raise InvalidArgumentError("Hessian must be symmetric")
    q_matrix.setflags(write=False)
    q_vector.setflags(write=False)

    eigenvalues = np.linalg.eigvalsh(q_matrix)
    if L is None:
        L = max(float(eigenvalues[-1]), 0.0)
    if delta is None:
        delta = min(float(eigenvalues[0]), L)

    def value_fn(x: Vector) -> float:
        return 0.5 * float(x @ (q_matrix @ x)) - float(q_vector @ x) + offset

    def gradient_fn(x: Vector) -> Vector:
        return q_matrix @ x - q_vector

    return SmoothComponent(
        value_fn=value_fn,
        gradient_fn=gradient_fn,
        L=float(L),
        delta=float(delta),
        quadratic=QuadraticData(hessian=q_matrix, linear=q_vector, offset=float(offset)),
    )


def create_linear_component(c: Vector) -> SmoothComponent:
    """f(x) = <c, x> (L = delta = 0)."""
    c_vector = np.asarray(c, dtype=np.float64)
    dim = c_vector.shape[0]
    return create_quadratic_component(np.zeros((dim, dim)), -c_vector, L=0.0, delta=0.0)


@dataclass(frozen=True)
class SaddleProblem:
    """
    Saddle problem container.

    Args:
        components: Ordered smooth components f_1..f_N.
        conjugate: The term h*.
        coupling: The linear map K.
        family: Catalog family name, if built from the catalog.
        params: Builder parameters echoed into summaries.
    """

    components: tuple[SmoothComponent, ...]
    conjugate: ConjugateTerm
    coupling: LinearMap
    family: str | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.components) < 1:
            raise InvalidArgumentError("A saddle problem needs at least one component")
        if self.L <= 0:
            raise InvalidArgumentError(f"L = sum L_i must be positive, got {self.L}")

        probe = np.zeros(self.coupling.d1)
        for i, component in enumerate(self.components):
            shape = component.gradient(probe).shape
            if shape != (self.coupling.d1,):
                raise InvalidArgumentError(
                    f"Component {i} gradient has shape {shape}, expected ({self.coupling.d1},)"
                )

    @property
    def N(self) -> int:
        """Number of components."""
        return len(self.components)

    @property
    def d1(self) -> int:
        """Primal dimension."""
        return self.coupling.d1

    @property
    def d2(self) -> int:
        """Dual dimension."""
        return self.coupling.d2

    @property
    def L(self) -> float:
        """Sum of component smoothness constants."""
        return float(sum(component.L for component in self.components))

    @property
    def delta(self) -> float:
        """Sum of component strong-convexity moduli."""
        return float(sum(component.delta for component in self.components))

    @property
    def gamma(self) -> float:
        """Strong-convexity modulus of h*."""
        return float(self.conjugate.gamma)

    @property
    def K_norm(self) -> float:
        """Cached ||K||."""
        return self.coupling.norm

    def quadratic_data(self) -> QuadraticData | None:
        """
        Aggregate closed-form data when every component is quadratic.

        Returns:
            Summed QuadraticData, or None if any component is a black box.
        """
        if any(component.quadratic is None for component in self.components):
            return None

        hessian = np.zeros((self.d1, self.d1))
        linear = np.zeros(self.d1)
        offset = 0.0
        for component in self.components:
            assert component.quadratic is not None
            hessian = hessian + component.quadratic.hessian
            linear = linear + component.quadratic.linear
            offset += component.quadratic.offset
        return QuadraticData(hessian=hessian, linear=linear, offset=offset)
