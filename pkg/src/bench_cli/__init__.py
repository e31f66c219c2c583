"""
Benchmark front end: experiment configs, runs, sweeps and artifacts.

Usage:
    from src.bench_cli import parse_config, run_experiment

    config = parse_config(Path("configs/experiments/thm1_quadratic.yaml").read_text())
    result = run_experiment(config, Path("runs/thm1"))
"""

from src.bench_cli.artifacts import (
    PLOT_COLUMNS,
    plot_rows,
    render_json,
    write_csv,
    write_json,
    write_plotdata,
    write_text_atomic,
    write_trace,
)
from src.bench_cli.experiment import (
    EXIT_DIVERGED,
    EXIT_FAIL,
    EXIT_INFEASIBLE,
    EXIT_PARSE_ERROR,
    EXIT_PASS,
    EXIT_STATUSES,
    ExperimentResult,
    ResolvedSteps,
    build_experiment_problem,
    build_schedule,
    certify_config,
    format_certificate,
    gap_at,
    resolve_step_sizes,
    run_experiment,
)
from src.bench_cli.schema import (
    AXIS_ALIASES,
    ExperimentConfig,
    apply_overrides,
    parse_config,
    serialize_config,
    set_path,
)
from src.bench_cli.sweep import SWEEP_COLUMNS, run_sweep, sweep_status

__all__ = [
    # Schema
    "AXIS_ALIASES",
    "ExperimentConfig",
    "apply_overrides",
    "parse_config",
    "serialize_config",
    "set_path",
    # Artifacts
    "PLOT_COLUMNS",
    "plot_rows",
    "render_json",
    "write_csv",
    "write_json",
    "write_plotdata",
    "write_text_atomic",
    "write_trace",
    # Experiments
    "EXIT_DIVERGED",
    "EXIT_FAIL",
    "EXIT_INFEASIBLE",
    "EXIT_PARSE_ERROR",
    "EXIT_PASS",
    "EXIT_STATUSES",
    "ExperimentResult",
    "ResolvedSteps",
    "build_experiment_problem",
    "build_schedule",
    "certify_config",
    "format_certificate",
    "gap_at",
    "resolve_step_sizes",
    "run_experiment",
    # Sweeps
    "SWEEP_COLUMNS",
    "run_sweep",
    "sweep_status",
]
