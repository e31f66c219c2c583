"""Axis-aligned boxes for the restricted gap."""

from dataclasses import dataclass

import numpy as np

from src.config import get_analysis_config
from src.errors import InvalidArgumentError
from src.types import Vector


@dataclass(frozen=True)
class BoxSet:
    """
    Nonempty box {z : lower <= z <= upper}.

    Args:
        lower: Lower corner.
        upper: Upper corner.
    """

    lower: Vector
    upper: Vector

    def __post_init__(self) -> None:
        lower = np.array(self.lower, dtype=np.float64)
        upper = np.array(self.upper, dtype=np.float64)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise InvalidArgumentError(
                f"Box corners must be vectors of equal size, got {lower.shape} and {upper.shape}"
            )
        if bool(np.any(lower > upper)):
            raise InvalidArgumentError("Box is empty: lower exceeds upper")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def centered(cls, center: Vector, half_width: float) -> "BoxSet":
        """Cube of given half-width around center."""
        center = np.asarray(center, dtype=np.float64)
        return cls(lower=center - half_width, upper=center + half_width)

    @property
    def dim(self) -> int:
        """Dimension."""
        return int(self.lower.shape[0])

    def contains(self, z: Vector, tol: float = 0.0) -> bool:
        """Whether z lies in the box (up to tol per coordinate)."""
        z = np.asarray(z, dtype=np.float64)
        return bool(np.all(z >= self.lower - tol) and np.all(z <= self.upper + tol))

    def diameter(self) -> float:
        """Euclidean length of the diagonal."""
        return float(np.linalg.norm(self.upper - self.lower))

    def max_sq_distance(self, center: Vector) -> float:
        """
        max over the box of |z - center|^2.

        Attained coordinatewise at the endpoint farther from center.
        """
        center = np.asarray(center, dtype=np.float64)
        farthest = np.maximum((self.lower - center) ** 2, (self.upper - center) ** 2)
        return float(np.sum(farthest))

    def project(self, z: Vector) -> Vector:
        """Euclidean projection onto the box."""
        return np.clip(z, self.lower, self.upper)


def default_boxes(
    x_hat: Vector,
    y_hat: Vector,
    x0: Vector,
    y0: Vector,
    factor: float | None = None,
) -> tuple[BoxSet, BoxSet]:
    """
    Boxes centered at the saddle, half-width factor * max(|x0 - x_hat|, |y0 - y_hat|, 1).

    Args:
        x_hat: Primal saddle point.
        y_hat: Dual saddle point.
        x0: Primal start.
        y0: Dual start.
        factor: Half-width multiplier (default from config).

    Returns:
        Tuple of (B1, B2).
    """
    if factor is None:
        factor = get_analysis_config()["box_half_width_factor"]
    radius = max(
        float(np.linalg.norm(np.asarray(x0) - x_hat)),
        float(np.linalg.norm(np.asarray(y0) - y_hat)),
        1.0,
    )
    half_width = factor * radius
    return BoxSet.centered(x_hat, half_width), BoxSet.centered(y_hat, half_width)


def gap_bound(
    B1: BoxSet,
    B2: BoxSet,
    x0: Vector,
    y0: Vector,
    sigma: float,
    tau: float,
    M: int,
) -> float:
    """
    (1/M) max_{(x,y) in B1 x B2} |x - x0|^2 / (2 sigma) + |y - y0|^2 / (2 tau).

    Raises:
        InvalidArgumentError: If M < 1.
    """
    if M < 1:
        raise InvalidArgumentError(f"M must be at least 1, got {M}")
    constant = B1.max_sq_distance(x0) / (2.0 * sigma) + B2.max_sq_distance(y0) / (2.0 * tau)
    return constant / M
