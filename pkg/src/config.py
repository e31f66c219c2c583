"""Configuration loading and management.

Provides centralized access to numeric defaults loaded from YAML files.
Supports environment variable overrides for command-line settings.

Usage:
    from src.config import get_config, get_env_override

    # Access config values
    norm_tol = get_config("coupling.norm_tol")
    cap = get_config("analysis.oracle_max_iters", 100000)

    # Access overrides (PDPIAG_SEED, PDPIAG_WORKERS, ...)
    seed = get_env_override("seed")
"""

import os
from pathlib import Path
from typing import Any, TypedDict, cast

import yaml

# === Configuration Type Definitions ===


class LoggingConfigData(TypedDict):
    """Logging configuration."""

    level: str
    format: str


class CouplingConfigData(TypedDict):
    """Coupling operator norm estimation settings."""

    norm_tol: float
    norm_max_iters_factor: int
    norm_seed: int
    adjoint_tol: float


class ValidationConfigData(TypedDict):
    """Sampling-based assumption validator settings."""

    num_samples: int
    sample_radius: float
    tolerance: float
    seed: int


class SolverConfigData(TypedDict):
    """Solver loop settings."""

    log_every: int
    aggregate_tol: float


class StepSizeConfigData(TypedDict):
    """Automatic step size search settings."""

    max_halvings: int
    ratio: float


class AnalysisConfigData(TypedDict):
    """Gap oracle, monitor and saddle settings."""

    oracle_tol: float
    oracle_max_iters: int
    monitor_tol_abs: float
    monitor_tol_rel: float
    box_half_width_factor: float
    saddle_residual_tol: float
    rate_floor: float
    reference_tol: float
    reference_max_iters: int


class CliConfigData(TypedDict):
    """Command-line defaults."""

    env_prefix: str
    workers: int
    out_dir: str


class AppConfigData(TypedDict):
    """Full application configuration."""

    schema_version: str
    logging: LoggingConfigData
    coupling: CouplingConfigData
    validation: ValidationConfigData
    solver: SolverConfigData
    stepsize: StepSizeConfigData
    analysis: AnalysisConfigData
    cli: CliConfigData


# === Module State ===

_config: AppConfigData | None = None
_config_dir: Path = Path(__file__).parent.parent / "configs"


def _load_yaml(file_path: Path) -> dict[str, Any]:
    """
    Load YAML file.

    Args:
        file_path: Path to YAML file.

    Returns:
        Parsed YAML content.

    Raises:
        FileNotFoundError: If file doesn't exist.
    """
    with open(file_path) as f:
        return yaml.safe_load(f) or {}


def load_config(config_path: Path | None = None) -> AppConfigData:
    """
    Load application configuration from YAML file.

    Args:
        config_path: Optional path to config file. Defaults to configs/default.yaml.

    Returns:
        Loaded configuration dictionary.

    Side effects: Caches configuration in module state.
    """
    global _config

    if config_path is None:
        config_path = _config_dir / "default.yaml"

    _config = cast(AppConfigData, _load_yaml(config_path))
    return _config


def get_config(key: str, default: Any = None) -> Any:
    """
    Get configuration value by dot-notation key.

    Args:
        key: Dot-notation key (e.g., "coupling.norm_tol").
        default: Default value if key not found.

    Returns:
        Configuration value.

    Example:
        tol = get_config("analysis.oracle_tol")
        cap = get_config("analysis.oracle_max_iters", 100000)
    """
    global _config

    if _config is None:
        load_config()

    value: Any = _config
    for part in key.split("."):
        if isinstance(value, dict) and part in value:
            value = value[part]
        else:
            return default

    return value


def get_env_override(name: str, env_override: str | None = None) -> str | None:
    """
    Get an environment override for a command-line setting.

    Variable names are the configured prefix plus the uppercased name
    (e.g., "out_dir" -> "PDPIAG_OUT_DIR").

    Args:
        name: Setting name (e.g., "seed", "workers").
        env_override: Optional explicit environment variable name.

    Returns:
        Raw string value or None if unset or empty.
    """
    if env_override:
        env_key = env_override
    else:
        prefix = get_config("cli.env_prefix", "PDPIAG_")
        env_key = f"{prefix}{name.replace('.', '_').upper()}"

    env_value = os.environ.get(env_key)
    return env_value if env_value else None


def get_full_config() -> AppConfigData:
    """
    Get full configuration dictionary.

    Returns:
        Complete configuration.
    """
    global _config

    if _config is None:
        load_config()

    assert _config is not None, "Configuration failed to load"
    return _config


def reload_config() -> AppConfigData:
    """
    Reload configuration from disk.

    Returns:
        Reloaded configuration.

    Side effects: Clears and reloads config cache.
    """
    global _config
    _config = None
    return load_config()


# === Convenience Accessors ===


def get_coupling_config() -> CouplingConfigData:
    """Get coupling operator configuration."""
    return get_config("coupling")  # type: ignore


def get_validation_config() -> ValidationConfigData:
    """Get assumption validator configuration."""
    return get_config("validation")  # type: ignore


def get_solver_config() -> SolverConfigData:
    """Get solver loop configuration."""
    return get_config("solver")  # type: ignore


def get_stepsize_config() -> StepSizeConfigData:
    """Get step size search configuration."""
    return get_config("stepsize")  # type: ignore


def get_analysis_config() -> AnalysisConfigData:
    """Get analysis configuration."""
    return get_config("analysis")  # type: ignore


def get_cli_config() -> CliConfigData:
    """Get command-line defaults."""
    return get_config("cli")  # type: ignore


def get_schema_version() -> str:
    """Get current schema version."""
    return get_config("schema_version", "1.0.0")  # type: ignore
