"""Dual extrapolation rules for the primal update."""

from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError
from src.types import RuleKind, Variant, Vector


@dataclass(frozen=True)
class ExtrapolationRule:
    """
    Choice of the dual point y_bar used in the primal step.

    Args:
        kind: "pdhg_extrapolation", "theta_extrapolation" or "arrow_hurwicz".
        theta: Weight of theta_extrapolation, in (0, 1].
    """

    kind: RuleKind
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "theta_extrapolation":
            if self.theta is None or not 0.0 < self.theta <= 1.0:
                raise InvalidArgumentError(f"theta must be in (0, 1], got {self.theta}")
        elif self.kind in ("pdhg_extrapolation", "arrow_hurwicz"):
            if self.theta is not None:
                raise InvalidArgumentError(f"{self.kind} takes no theta")
        else:
            raise InvalidArgumentError(f"Unknown extrapolation rule: {self.kind}")

    @classmethod
    def pdhg(cls) -> "ExtrapolationRule":
        """y_bar = 2 y_k - y_{k-1}."""
        return cls(kind="pdhg_extrapolation")

    @classmethod
    def with_theta(cls, theta: float) -> "ExtrapolationRule":
        """y_bar = y_k + theta (y_k - y_{k-1})."""
        return cls(kind="theta_extrapolation", theta=theta)

    @classmethod
    def arrow_hurwicz(cls) -> "ExtrapolationRule":
        """y_bar = y_k."""
        return cls(kind="arrow_hurwicz")

    @classmethod
    def for_variant(cls, variant: Variant, theta: float | None = None) -> "ExtrapolationRule":
        """Rule associated with each convergence variant."""
        if variant == "thm1":
            return cls.pdhg()
        if variant == "thm2":
            if theta is None:
                raise InvalidArgumentError("thm2 needs theta")
            return cls.with_theta(theta)
        if variant == "thm3":
            return cls.arrow_hurwicz()
        raise InvalidArgumentError(f"Unknown variant: {variant}")


def extrapolate(rule: ExtrapolationRule, y: Vector, y_prev: Vector) -> Vector:
    """
    Compute y_bar.

    Args:
        rule: Extrapolation rule.
        y: Current dual iterate y_k.
        y_prev: Previous dual iterate y_{k-1}.

    Returns:
        New array y_bar.
    """
    if np.shape(y) != np.shape(y_prev):
        raise InvalidArgumentError(
            f"y and y_prev shapes differ: {np.shape(y)} vs {np.shape(y_prev)}"
        )
    if rule.kind == "pdhg_extrapolation":
        return 2.0 * y - y_prev
    if rule.kind == "theta_extrapolation":
        assert rule.theta is not None
        return y + rule.theta * (y - y_prev)
    return np.array(y, dtype=np.float64, copy=True)
