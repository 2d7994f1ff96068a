"""Episode running, experiment aggregation, scoring, and analysis."""

from .episode import run_episode
from .experiment import (
    CellStats,
    ExperimentPlan,
    ExperimentReport,
    cliff_experiment,
    emit_report,
    episode_seed,
    load_plan,
    run_experiment,
)
from .failure import FailureEstimate, failure_bound, monte_carlo_failure
from .metrics import Metrics, compute_metrics
from .overlay import reference_overlay
from .profiles import CONFIG_DIR_ENV, load_profile, method_names, resolve_method
from .trace import Trace, read_trace, trace_lines, write_trace

__all__ = [
    "CONFIG_DIR_ENV",
    "CellStats",
    "ExperimentPlan",
    "ExperimentReport",
    "FailureEstimate",
    "Metrics",
    "Trace",
    "cliff_experiment",
    "compute_metrics",
    "emit_report",
    "episode_seed",
    "failure_bound",
    "load_plan",
    "load_profile",
    "method_names",
    "monte_carlo_failure",
    "read_trace",
    "reference_overlay",
    "resolve_method",
    "run_episode",
    "run_experiment",
    "trace_lines",
    "write_trace",
]
