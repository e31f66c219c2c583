"""Exception hierarchy.

Argument problems derive from ValueError, state problems from RuntimeError,
so callers that only know the builtins still catch them.
"""

from typing import Any


class InvalidArgumentError(ValueError):
    """Argument outside an operation's domain (dimensions, step sizes, indices)."""


class BaselineUnavailableError(InvalidArgumentError):
    """FBS/PIAG requested for a problem whose coupling is not the identity."""


class ConfigParseError(ValueError):
    """Experiment config failed schema validation."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None) -> None:
        self.key = key
        self.line = line
        location = ""
        if key is not None:
            location = f"{key}"
            if line is not None:
                location += f" (line {line})"
            location += ": "
        super().__init__(f"{location}{message}")


class DivergenceError(RuntimeError):
    """Iterate became non-finite. Carries the last finite solver state."""

    def __init__(self, message: str, last_state: Any) -> None:
        super().__init__(message)
        self.last_state = last_state


class InfeasibleStepSizeError(RuntimeError):
    """No certified step sizes found within the halving budget."""

    def __init__(self, message: str, last_certificate: Any = None) -> None:
        super().__init__(message)
        self.last_certificate = last_certificate


class InternalInconsistencyError(RuntimeError):
    """A proven ordering between rate constants does not hold for the inputs."""
