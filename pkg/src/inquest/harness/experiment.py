"""Multi-run experiment execution and aggregation.

A plan names bundled cases, profile methods, a run count and a base
seed.  Each (case, method, run) cell derives its own episode seed as

    base_seed XOR first-8-bytes(sha256("case/method/run"))

so streams are reproducible but de-correlated across cells.  Episodes
are independent; with `workers` set they run in a process pool, and the
report is identical to sequential execution because collection follows
task order, not completion order.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from statistics import mean, stdev

from ..errors import InquestError, InvalidParams
from ..fixtures import CASE_IDS, load_case

from .episode import run_episode
from .metrics import compute_metrics
from .profiles import CONFIG_DIR_ENV, load_profile, resolve_method

_SEED_MASK = (1 << 63) - 1


@dataclass(frozen=True)
class ExperimentPlan:
    cases: tuple[str, ...]
    methods: tuple[str, ...]
    n_runs: int
    base_seed: int
    profile: str = "default"
    turn_budget: int | None = None

    def __post_init__(self):
        if self.n_runs < 1:
            raise InvalidParams("n_runs must be >= 1")
        if not self.cases or not self.methods:
            raise InvalidParams("plan needs at least one case and one method")
        for case_id in self.cases:
            if case_id not in CASE_IDS:
                raise InvalidParams(f"unknown case {case_id!r}; bundled: {CASE_IDS}")


def load_plan(text: str) -> ExperimentPlan:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise InvalidParams("plan document must be an object")
    known = {"cases", "methods", "n_runs", "base_seed", "profile", "turn_budget"}
    extra = set(doc) - known
    if extra:
        raise InvalidParams(f"unknown plan fields: {sorted(extra)}")
    try:
        return ExperimentPlan(
            cases=tuple(doc["cases"]),
            methods=tuple(doc["methods"]),
            n_runs=int(doc["n_runs"]),
            base_seed=int(doc["base_seed"]),
            profile=doc.get("profile", "default"),
            turn_budget=doc.get("turn_budget"),
        )
    except KeyError as exc:
        raise InvalidParams(f"plan missing field {exc.args[0]!r}")


def episode_seed(base_seed: int, case_id: str, method: str, run: int) -> int:
    tag = f"{case_id}/{method}/{run}".encode()
    scramble = int.from_bytes(hashlib.sha256(tag).digest()[:8], "big")
    return (base_seed ^ scramble) & _SEED_MASK


@dataclass(frozen=True)
class CellStats:
    """Aggregates for one (case, method) cell; stds absent when n < 2."""

    case_id: str
    method: str
    n_runs: int
    n_failed: int
    completeness_mean: float | None
    completeness_std: float | None
    redundancy_mean: float | None
    redundancy_std: float | None
    unknown_mean: float | None
    unknown_std: float | None
    turns_mean: float | None
    completeness_min: float | None
    completeness_max: float | None
    errors: tuple[str, ...] = ()

    @property
    def stability(self) -> float | None:
        return self.completeness_std


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple[CellStats, ...]
    n_runs: int
    base_seed: int
    profile: str


@lru_cache(maxsize=None)
def _cached_profile(name: str, config_dir: str | None) -> dict:
    return load_profile(name)


@lru_cache(maxsize=None)
def _cached_case(case_id: str):
    return load_case(case_id)


def _run_one(task: tuple) -> tuple:
    case_id, method, run, base_seed, profile_name, turn_budget = task
    seed = episode_seed(base_seed, case_id, method, run)
    try:
        profile = _cached_profile(profile_name, os.environ.get(CONFIG_DIR_ENV))
        schema, facts = _cached_case(case_id)
        agent_cfg, ctrl_cfg = resolve_method(profile, method, turn_budget)
        trace = run_episode(schema, facts, agent_cfg, ctrl_cfg, seed)
        m = compute_metrics(trace, schema)
        values = (m.completeness, m.redundancy, m.unknown_rate, float(m.turns_used))
        return case_id, method, run, values, None
    except InquestError as exc:
        return case_id, method, run, None, f"{type(exc).__name__}: {exc}"


def _aggregate(
    case_id: str, method: str, outcomes: list[tuple], n_runs: int
) -> CellStats:
    values = [v for (_, _, _, v, _) in outcomes if v is not None]
    errors = tuple(
        f"run {run}: {err}" for (_, _, run, v, err) in outcomes if err is not None
    )
    if not values:
        return CellStats(
            case_id=case_id,
            method=method,
            n_runs=n_runs,
            n_failed=len(errors),
            completeness_mean=None,
            completeness_std=None,
            redundancy_mean=None,
            redundancy_std=None,
            unknown_mean=None,
            unknown_std=None,
            turns_mean=None,
            completeness_min=None,
            completeness_max=None,
            errors=errors,
        )
    comp, red, unk, turns = (list(col) for col in zip(*values))
    std = (lambda xs: stdev(xs) if len(xs) >= 2 else None)
    return CellStats(
        case_id=case_id,
        method=method,
        n_runs=n_runs,
        n_failed=len(errors),
        completeness_mean=mean(comp),
        completeness_std=std(comp),
        redundancy_mean=mean(red),
        redundancy_std=std(red),
        unknown_mean=mean(unk),
        unknown_std=std(unk),
        turns_mean=mean(turns),
        completeness_min=min(comp),
        completeness_max=max(comp),
        errors=errors,
    )


def run_experiment(plan: ExperimentPlan, workers: int | None = None) -> ExperimentReport:
    """One Metrics per (case, method, run), aggregated per cell.

    Failed episodes are kept as error entries on their cell, never
    silently dropped.  `workers=None` runs sequentially.
    """
    tasks = [
        (case_id, method, run, plan.base_seed, plan.profile, plan.turn_budget)
        for case_id in plan.cases
        for method in plan.methods
        for run in range(plan.n_runs)
    ]
    if workers is None:
        outcomes = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one, tasks, chunksize=8))

    by_cell: dict[tuple[str, str], list[tuple]] = {}
    for outcome in outcomes:
        by_cell.setdefault((outcome[0], outcome[1]), []).append(outcome)
    rows = tuple(
        _aggregate(case_id, method, by_cell[(case_id, method)], plan.n_runs)
        for case_id in plan.cases
        for method in plan.methods
    )
    return ExperimentReport(
        rows=rows, n_runs=plan.n_runs, base_seed=plan.base_seed, profile=plan.profile
    )


def cliff_experiment(
    cases: tuple[str, ...],
    methods: tuple[str, ...],
    n_runs: int,
    base_seed: int,
    workers: int | None = None,
    profile: str = "default",
) -> dict[str, tuple[tuple[str, float | None], ...]]:
    """Mean completeness per case, per method, over cases ordered by depth."""
    if len(cases) < 2:
        raise InvalidParams("cliff needs at least two cases to compare")
    plan = ExperimentPlan(
        cases=cases, methods=methods, n_runs=n_runs, base_seed=base_seed, profile=profile
    )
    report = run_experiment(plan, workers=workers)
    curves: dict[str, list[tuple[str, float | None]]] = {m: [] for m in methods}
    for row in report.rows:
        curves[row.method].append((row.case_id, row.completeness_mean))
    return {m: tuple(points) for m, points in curves.items()}


_COLUMNS = (
    "case",
    "method",
    "completeness_mean",
    "completeness_std",
    "redundancy_mean",
    "redundancy_std",
    "unknown_mean",
    "unknown_std",
    "turns_mean",
    "completeness_min",
    "completeness_max",
    "n_failed",
)


def _cells(row: CellStats) -> list:
    return [
        row.case_id,
        row.method,
        row.completeness_mean,
        row.completeness_std,
        row.redundancy_mean,
        row.redundancy_std,
        row.unknown_mean,
        row.unknown_std,
        row.turns_mean,
        row.completeness_min,
        row.completeness_max,
        row.n_failed,
    ]


def _fmt(value, blank: str) -> str:
    if value is None:
        return blank
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def emit_report(report: ExperimentReport, format: str = "csv") -> str:
    """Render a report with a stable column order.

    Formats: "csv", "markdown", "jsonl" (one object per row).
    """
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_COLUMNS)
        for row in report.rows:
            writer.writerow(_fmt(v, "") for v in _cells(row))
        return buf.getvalue()
    if format == "markdown":
        lines = [
            "| " + " | ".join(_COLUMNS) + " |",
            "|" + "|".join("---" for _ in _COLUMNS) + "|",
        ]
        for row in report.rows:
            lines.append("| " + " | ".join(_fmt(v, "-") for v in _cells(row)) + " |")
        return "\n".join(lines) + "\n"
    if format == "jsonl":
        lines = []
        for row in report.rows:
            doc = dict(zip(_COLUMNS, _cells(row)))
            doc["errors"] = list(row.errors)
            lines.append(json.dumps(doc, sort_keys=True))
        return "\n".join(lines) + "\n"
    raise InvalidParams(f"unknown report format {format!r}")
