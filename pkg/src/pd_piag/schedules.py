"""
Delay schedules.

A schedule decides, after the step that produced x_{k+1}, which memory
entries are refreshed and at which stored iterate. The refresh plan is a pure
function of (k, stamps), so runs are reproducible without carrying generator
state between steps.

    cyclic              component k mod N refreshed at x_{k+1}; effective T = N - 1
    constant(T)         every entry refreshed at x_{k+1-T} (clamped to x_0)
    random_bounded(T,p) each entry refreshed at x_{k+1} with probability p,
                        forced when its staleness would exceed T
"""

from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError
from src.types import ScheduleKind


@dataclass(frozen=True)
class RefreshPlan:
    """Components to refresh and the iteration index of the point to use."""

    indices: tuple[int, ...]
    source: int


@dataclass(frozen=True)
class DelaySchedule:
    """
    Bounded-delay refresh policy.

    Args:
        kind: "cyclic", "random_bounded" or "constant".
        T: Delay bound (ignored for cyclic).
        p: Refresh probability (random_bounded only).
        seed: Draw seed (random_bounded only).
    """

    kind: ScheduleKind
    T: int = 0
    p: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("cyclic", "random_bounded", "constant"):
            raise InvalidArgumentError(f"Unknown schedule kind: {self.kind}")
        if self.T < 0:
            raise InvalidArgumentError(f"T must be non-negative, got {self.T}")
        if not 0.0 < self.p <= 1.0:
            raise InvalidArgumentError(f"p must be in (0, 1], got {self.p}")
        if self.seed < 0:
            raise InvalidArgumentError(f"seed must be non-negative, got {self.seed}")

    @classmethod
    def cyclic(cls) -> "DelaySchedule":
        """Algorithm 1's cyclic refresh."""
        return cls(kind="cyclic")

    @classmethod
    def constant(cls, T: int) -> "DelaySchedule":
        """Every gradient exactly min(k, T) iterations old."""
        return cls(kind="constant", T=T)

    @classmethod
    def random_bounded(cls, T: int, p: float = 0.5, seed: int = 0) -> "DelaySchedule":
        """Random refreshes with staleness capped at T."""
        return cls(kind="random_bounded", T=T, p=p, seed=seed)

    def effective_T(self, N: int) -> int:
        """
        Delay bound this schedule guarantees for N components.

        Args:
            N: Number of components.

        Returns:
            N - 1 for cyclic, the configured T otherwise.
        """
        return N - 1 if self.kind == "cyclic" else self.T

    def refresh_plan(self, k: int, stamps: tuple[int, ...]) -> RefreshPlan:
        """
        Plan the refresh following step k (which produced x_{k+1}).

        Args:
            k: Index of the completed step.
            stamps: Current memory stamps.

        Returns:
            RefreshPlan; indices are ascending and never include an entry
            whose stamp would not advance.
        """
        N = len(stamps)
        k_next = k + 1

        if self.kind == "cyclic":
            return RefreshPlan(indices=(k % N,), source=k_next)

        if self.kind == "constant":
            source = max(k_next - self.T, 0)
            indices = tuple(i for i, stamp in enumerate(stamps) if stamp < source)
            return RefreshPlan(indices=indices, source=source)

        draws = np.random.default_rng([self.seed, k]).random(N) < self.p
        indices = tuple(
            i for i, stamp in enumerate(stamps) if bool(draws[i]) or k_next - stamp > self.T
        )
        return RefreshPlan(indices=indices, source=k_next)

    def refresh_set(self, k: int, stamps: tuple[int, ...]) -> tuple[int, ...]:
        """Component indices refreshed after step k."""
        return self.refresh_plan(k, stamps).indices

    def describe(self) -> dict[str, object]:
        """Serializable description for trace headers."""
        if self.kind == "cyclic":
            return {"kind": "cyclic"}
        if self.kind == "constant":
            return {"kind": "constant", "T": self.T}
        return {"kind": "random_bounded", "T": self.T, "p": self.p, "seed": self.seed}
