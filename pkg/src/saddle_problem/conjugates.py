"""
Conjugate regularizers h* with closed-form proximal operators.

Every catalog term is separable, so the dual inner problem of the partial
gap (max over a box of <u, y> - h*(y)) is solved coordinatewise here.
"""

from abc import ABC, abstractmethod

import numpy as np

from src.errors import InvalidArgumentError
from src.types import Vector


class ConjugateTerm(ABC):
    """
    Proper closed convex h*: R^{d2} -> R U {+inf}.

    Attributes:
        gamma: Strong-convexity modulus (0 when merely convex).
        name: Short identifier used in summaries.
    """

    gamma: float = 0.0
    name: str = "conjugate"

    @abstractmethod
    def value(self, y: Vector) -> float:
        """Evaluate h*(y); +inf outside the domain."""

    @abstractmethod
    def prox(self, tau: float, v: Vector) -> Vector:
        """argmin_u h*(u) + |u - v|^2 / (2 tau). Callers validate tau."""

    @abstractmethod
    def subgradient(self, y: Vector) -> Vector:
        """An element of the subdifferential at a point of the domain."""

    @abstractmethod
    def box_max(self, u: Vector, lower: Vector, upper: Vector) -> tuple[float, Vector | None]:
        """
        Solve max_{lower <= y <= upper} <u, y> - h*(y).

        Returns:
            Tuple of (optimal value, maximizer); (-inf, None) when the box
            misses the domain.
        """

    def is_separable(self) -> bool:
        """Whether h* is a sum of scalar functions (all catalog terms are)."""
        return True


def _linear_box_max(u: Vector, lower: Vector, upper: Vector) -> tuple[float, Vector]:
    y = np.where(u > 0, upper, lower)
    return float(np.dot(u, y)), y


class ZeroConjugate(ConjugateTerm):
    """h* = 0, whose prox is the identity."""

    name = "zero"

    def value(self, y: Vector) -> float:
        return 0.0

    def prox(self, tau: float, v: Vector) -> Vector:
        return np.array(v, dtype=np.float64, copy=True)

    def subgradient(self, y: Vector) -> Vector:
        return np.zeros_like(y, dtype=np.float64)

    def box_max(self, u: Vector, lower: Vector, upper: Vector) -> tuple[float, Vector | None]:
        return _linear_box_max(u, lower, upper)


class QuadraticConjugate(ConjugateTerm):
    """
    h*(y) = (gamma / 2) |y|^2.

    Args:
        gamma: Nonnegative modulus.
    """

    name = "quadratic"

    def __init__(self, gamma: float) -> None:
        if gamma < 0:
            raise InvalidArgumentError(f"gamma must be non-negative, got {gamma}")
        self.gamma = float(gamma)

    def value(self, y: Vector) -> float:
        return 0.5 * self.gamma * float(np.dot(y, y))

    def prox(self, tau: float, v: Vector) -> Vector:
        return np.asarray(v, dtype=np.float64) / (1.0 + tau * self.gamma)

    def subgradient(self, y: Vector) -> Vector:
        return self.gamma * np.asarray(y, dtype=np.float64)

    def box_max(self, u: Vector, lower: Vector, upper: Vector) -> tuple[float, Vector | None]:
        if self.gamma == 0.0:
            return _linear_box_max(u, lower, upper)
        y = np.clip(u / self.gamma, lower, upper)
        return float(np.dot(u, y)) - self.value(y), y


class BoxIndicatorConjugate(ConjugateTerm):
    """
    Indicator of [-radius, radius]^{d2}, the conjugate of radius * |.|_1.

    A zero radius gives the indicator of {0} (h = 0).

    Args:
        radius: Box half-width (lambda).
    """

    name = "box_indicator"

    def __init__(self, radius: float) -> None:
        if radius < 0:
            raise InvalidArgumentError(f"radius must be non-negative, got {radius}")
        self.radius = float(radius)

    def value(self, y: Vector) -> float:
        return 0.0 if bool(np.all(np.abs(y) <= self.radius)) else float("inf")

    def prox(self, tau: float, v: Vector) -> Vector:
        return np.clip(np.asarray(v, dtype=np.float64), -self.radius, self.radius)

    def subgradient(self, y: Vector) -> Vector:
        # 0 lies in the normal cone at every feasible point
        return np.zeros_like(y, dtype=np.float64)

    def box_max(self, u: Vector, lower: Vector, upper: Vector) -> tuple[float, Vector | None]:
        lo = np.maximum(lower, -self.radius)
        hi = np.minimum(upper, self.radius)
        if bool(np.any(lo > hi)):
            return float("-inf"), None
        return _linear_box_max(u, lo, hi)
