"""
Experiment config schema.

Configs are YAML (JSON is accepted through the same loader). Validation
happens once at the boundary with pydantic; unknown keys are rejected and
every error names the offending dotted key and its source line.

Minimal config:

    problem:
      family: quadratic-quadratic
    solver:
      variant: thm1
"""

from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.errors import ConfigParseError
from src.types import CouplingKind, FamilyName, OracleStrategy, ScheduleKind, Variant

MonitorName = Literal["boundedness", "gap", "linear_rate"]

# Sweep axis shorthands -> dotted config paths
AXIS_ALIASES: dict[str, str] = {
    "T": "solver.schedule.T",
    "p": "solver.schedule.p",
    "sigma": "solver.sigma",
    "tau": "solver.tau",
    "theta": "solver.theta",
    "max_iters": "solver.max_iters",
    "N": "problem.N",
    "d1": "problem.d1",
    "d2": "problem.d2",
    "gamma": "problem.gamma",
    "lam": "problem.lam",
    "conditioning": "problem.conditioning",
    "seed": "seed",
}


def _auto_or_positive(value: Any, name: str) -> Any:
    if value is None or value == "auto":
        return "auto"
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ValueError(f"{name} must be a positive number or 'auto'")
    if not value > 0:
        raise ValueError(f"{name} must be positive")
    return float(value)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ProblemConfig(_Strict):
    """Catalog family and its parameters."""

    family: FamilyName
    d1: int = Field(default=2, ge=1)
    d2: int | None = Field(default=None, ge=1)
    N: int = Field(default=2, ge=1)
    seed: int | None = Field(default=None, ge=0)
    gamma: float = Field(default=1.0, ge=0)
    lam: float = Field(default=1.0, ge=0)
    conditioning: float = Field(default=4.0, ge=1)
    diagonal: bool = True
    rows_per_component: int | None = Field(default=None, ge=1)
    coupling: CouplingKind | None = None
    coupling_scale: float = 1.0

    @model_validator(mode="after")
    def _fill_defaults(self) -> "ProblemConfig":
        if self.d2 is None:
            self.d2 = self.d1
        if self.coupling is None:
            self.coupling = "gaussian" if self.family == "quadratic-quadratic" else "identity"
        if self.coupling == "identity" and self.d1 != self.d2:
            raise ValueError("identity coupling needs d1 == d2")
        return self


class ScheduleConfig(_Strict):
    """Delay schedule."""

    kind: ScheduleKind = "cyclic"
    T: int = Field(default=0, ge=0)
    p: float = Field(default=0.5, gt=0, le=1)
    seed: int | None = Field(default=None, ge=0)


class SolverConfig(_Strict):
    """Variant, step sizes and iteration budget."""

    variant: Variant
    sigma: float | Literal["auto"] = "auto"
    tau: float | Literal["auto"] = "auto"
    theta: float | Literal["auto"] = "auto"
    max_iters: int = Field(default=1000, ge=1)
    schedule: ScheduleConfig = Field(default_factory=ScheduleConfig)
    x0: list[float] | None = None
    y0: list[float] | None = None

    @field_validator("sigma", "tau", "theta", mode="before")
    @classmethod
    def _check_step(cls, value: Any, info: Any) -> Any:
        value = _auto_or_positive(value, info.field_name)
        if info.field_name == "theta" and value != "auto" and value > 1:
            raise ValueError(f"theta must lie in (0, 1], got {value}")
        return value

    @model_validator(mode="after")
    def _check_pairing(self) -> "SolverConfig":
        if (self.sigma == "auto") != (self.tau == "auto"):
            raise ValueError("sigma and tau must both be 'auto' or both explicit")
        if self.theta != "auto" and self.variant != "thm2":
            raise ValueError("theta only applies to variant thm2")
        return self


class BoxesConfig(_Strict):
    """Explicit gap boxes."""

    x_lower: list[float]
    x_upper: list[float]
    y_lower: list[float]
    y_upper: list[float]


class AnalysisConfig(_Strict):
    """Monitors and gap evaluation."""

    gap_checkpoints: list[int] = Field(default_factory=lambda: [10, 100, 1000])
    boxes: BoxesConfig | None = None
    monitors: list[MonitorName] | None = None
    oracle: OracleStrategy | None = None

    @field_validator("boxes", "monitors", "oracle", mode="before")
    @classmethod
    def _auto_is_none(cls, value: Any) -> Any:
        return None if value == "auto" else value

    @field_validator("gap_checkpoints")
    @classmethod
    def _positive_checkpoints(cls, value: list[int]) -> list[int]:
        if any(M < 1 for M in value):
            raise ValueError("gap_checkpoints must be positive")
        return sorted(set(value))


class OutputConfig(_Strict):
    """Artifact paths, relative to the output directory."""

    trace_path: str = "trace.csv"
    summary_path: str = "summary.json"
    plotdata_path: str = "plotdata.csv"
    record_wall_time: bool = False


class ExperimentConfig(_Strict):
    """Complete experiment description."""

    problem: ProblemConfig
    solver: SolverConfig
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    seed: int = Field(default=0, ge=0)
    force: bool = False

    @model_validator(mode="after")
    def _check_starts(self) -> "ExperimentConfig":
        if self.solver.x0 is not None and len(self.solver.x0) != self.problem.d1:
            raise ValueError(f"solver.x0 must have {self.problem.d1} entries")
        if self.solver.y0 is not None and len(self.solver.y0) != self.problem.d2:
            raise ValueError(f"solver.y0 must have {self.problem.d2} entries")
        return self

    @property
    def problem_seed(self) -> int:
        """Matrix generation seed (problem.seed, else the experiment seed)."""
        return self.problem.seed if self.problem.seed is not None else self.seed

    @property
    def schedule_seed(self) -> int:
        """Random schedule seed (schedule.seed, else the experiment seed)."""
        seed = self.solver.schedule.seed
        return seed if seed is not None else self.seed


def _node_line(root: yaml.Node | None, path: list[str | int]) -> int | None:
    """1-based line of the deepest node along path."""
    if root is None:
        return None
    node = root
    line = node.start_mark.line + 1
    for part in path:
        child = None
        if isinstance(node, yaml.MappingNode):
            for key_node, value_node in node.value:
                if key_node.value == str(part):
                    child = value_node
                    line = key_node.start_mark.line + 1
                    break
        elif isinstance(node, yaml.SequenceNode) and isinstance(part, int):
            if 0 <= part < len(node.value):
                child = node.value[part]
                line = child.start_mark.line + 1
        if child is None:
            break
        node = child
    return line


def _message(error: Any) -> str:
    message = str(error["msg"])
    for prefix in ("Value error, ", "Assertion failed, "):
        if message.startswith(prefix):
            return message[len(prefix) :]
    return message


def parse_config(text: str) -> ExperimentConfig:
    """
    Parse and validate config text.

    Args:
        text: YAML (or JSON) document.

    Returns:
        Validated ExperimentConfig with defaults filled.

    Raises:
        ConfigParseError: On syntax errors, non-mapping documents or schema violations.
    """
    try:
        data = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigParseError(
            f"invalid syntax: {getattr(e, 'problem', e)}",
            key="<document>",
            line=mark.line + 1 if mark is not None else None,
        ) from e

    if not isinstance(data, dict):
        raise ConfigParseError("config must be a mapping", key="<document>", line=1)

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        path = [part for part in error["loc"] if isinstance(part, str | int)]
        key = ".".join(str(part) for part in path) or "<document>"
        raise ConfigParseError(_message(error), key=key, line=_node_line(root, path)) from e


def config_to_dict(config: ExperimentConfig) -> dict[str, Any]:
    """JSON-compatible dict with every default filled in."""
    return config.model_dump(mode="json")


def serialize_config(config: ExperimentConfig) -> str:
    """Canonical YAML text; parse_config(serialize_config(c)) == c."""
    return yaml.safe_dump(config_to_dict(config), sort_keys=False)


def set_path(config: ExperimentConfig, path: str, value: Any) -> ExperimentConfig:
    """
    Copy of config with one dotted field replaced and revalidated.

    Args:
        config: Base config.
        path: Dotted path or an AXIS_ALIASES shorthand.
        value: New value.

    Returns:
        New ExperimentConfig.

    Raises:
        ConfigParseError: If the path does not exist or the value is invalid.
    """
    dotted = AXIS_ALIASES.get(path, path)
    data = config_to_dict(config)
    parts = dotted.split(".")
    node = data
    for part in parts[:-1]:
        if not isinstance(node.get(part), dict):
            raise ConfigParseError(f"unknown config field '{dotted}'", key=dotted)
        node = node[part]
    if parts[-1] not in node:
        raise ConfigParseError(f"unknown config field '{dotted}'", key=dotted)
    node[parts[-1]] = value

    # Step sizes move together along a sweep axis
    if dotted in ("solver.sigma", "solver.tau") and value != "auto":
        other = "tau" if dotted == "solver.sigma" else "sigma"
        if data["solver"][other] == "auto":
            data["solver"][other] = value

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(part) for part in error["loc"] if isinstance(part, str | int))
        raise ConfigParseError(_message(error), key=key or dotted) from e


def apply_overrides(
    config: ExperimentConfig,
    seed: int | None = None,
    force: bool | None = None,
) -> ExperimentConfig:
    """Copy of config with command-line or environment overrides applied."""
    updates: dict[str, Any] = {}
    if seed is not None:
        if seed < 0:
            raise ConfigParseError("seed must be non-negative", key="seed")
        updates["seed"] = seed
    if force is not None:
        updates["force"] = force
    return config.model_copy(update=updates) if updates else config
