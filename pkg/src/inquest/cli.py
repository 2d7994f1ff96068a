"""Command-line front end.

Subcommands: validate, gen-schema, run, experiment, analyze, bound.
Successful output goes to stdout; failures print one JSON error object
to stderr and exit nonzero, so scripts can parse either stream.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .agents import AgentConfig, AgentKind
from .controller import ControllerConfig, ControllerMode
from .errors import InquestError
from .schema import (
    generate_synthetic_schema,
    parse_schema,
    read_schema_document,
    serialize_schema,
    validate_schema,
)
from .state import DEFAULT_STALL_MIN_LEN, detect_stagnation
from .witness import parse_facts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inquest",
        description="State-machine-guided structured inquiry: run, measure, analyze.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a schema document and report findings")
    p.add_argument("schema", help="path to a schema JSON document")

    p = sub.add_parser("gen-schema", help="emit a synthetic schema document")
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--kius-per-stage", type=int, required=True)
    p.add_argument("--density", type=float, default=0.0,
                   help="probability of extra cross-stage dependency edges")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write here instead of stdout")

    p = sub.add_parser("run", help="run one episode and print its metrics")
    p.add_argument("--schema", required=True)
    p.add_argument("--facts", required=True)
    p.add_argument("--agent", default="soft_fsm",
                   choices=[k.value for k in AgentKind])
    p.add_argument("--controller", default="soft_fsm",
                   choices=[m.value for m in ControllerMode])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None,
                   help="turn budget (default: 3x schema size)")
    p.add_argument("--stall-abort", type=int, default=None,
                   help="abort after this many consecutive no-gain turns")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--redundancy-bias", type=float, default=0.0)
    p.add_argument("--unknown-bias", type=float, default=0.0)
    p.add_argument("--recovery-prob", type=float, default=0.0)
    p.add_argument("--bridge-command", default=None,
                   help="launch string for an external wire-protocol agent")
    p.add_argument("--trace-out", default=None, help="write the trace file here")

    p = sub.add_parser("experiment", help="run a multi-seed experiment plan")
    p.add_argument("--plan", required=True, help="path to a plan JSON document")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", default="csv", choices=["csv", "markdown", "jsonl"])
    p.add_argument("--workers", type=int, default=None,
                   help="process pool size (default: sequential)")
    p.add_argument("--overlay-reference", action="store_true",
                   help="append a table comparing against the bundled "
                        "published results")

    p = sub.add_parser("analyze", help="report stagnation regions of a trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--min-stall", type=int, default=DEFAULT_STALL_MIN_LEN,
                   help="minimum region length in turns")

    p = sub.add_parser("bound", help="closed-form failure bound, optionally with Monte Carlo")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mc-trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _emit(doc: dict, out: str | None = None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(args) -> int:
    schema = read_schema_document(Path(args.schema).read_text("utf-8"))
    report = validate_schema(schema)
    _emit(
        {
            "ok": report.ok,
            "case_id": schema.case_id,
            "findings": [
                {"code": f.code, "subject": f.subject, "message": f.message}
                for f in report.findings
            ],
        }
    )
    return 0 if report.ok else 1


def _cmd_gen_schema(args) -> int:
    schema = generate_synthetic_schema(
        stages=args.stages,
        kius_per_stage=args.kius_per_stage,
        dependency_density=args.density,
        seed=args.seed,
    )
    text = serialize_schema(schema)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_run(args) -> int:
    from .harness import compute_metrics, run_episode, write_trace

    schema = parse_schema(Path(args.schema).read_text("utf-8"))
    facts = parse_facts(Path(args.facts).read_text("utf-8"))
    agent = AgentConfig(
        kind=AgentKind(args.agent),
        epsilon=args.epsilon,
        redundancy_bias=args.redundancy_bias,
        unknown_bias=args.unknown_bias,
        recovery_prob=args.recovery_prob,
        seed=args.seed,
        external_command=args.bridge_command,
    )
    controller = ControllerConfig(
        mode=ControllerMode(args.controller),
        turn_budget=args.budget,
        stall_abort=args.stall_abort,
    )
    trace = run_episode(schema, facts, agent, controller, seed=args.seed)
    metrics = compute_metrics(trace, schema)
    if args.trace_out:
        write_trace(trace, schema, args.trace_out)
    _emit(
        {
            "case_id": trace.case_id,
            "outcome": trace.outcome.value,
            "turns_used": metrics.turns_used,
            "completeness": metrics.completeness,
            "redundancy": metrics.redundancy,
            "unknown_rate": metrics.unknown_rate,
            "final_filled_count": trace.final_filled_count,
            "annotation": trace.annotation,
        }
    )
    return 0


def _cmd_experiment(args) -> int:
    from .harness import emit_report, load_plan, reference_overlay, run_experiment

    plan = load_plan(Path(args.plan).read_text("utf-8"))
    report = run_experiment(plan, workers=args.workers)
    rendered = emit_report(report, format=args.format)
    if args.overlay_reference:
        rendered += "\n" + reference_overlay(report)
    if args.out:
        Path(args.out).write_text(rendered)
    else:
        sys.stdout.write(rendered)
    return 0


def _cmd_analyze(args) -> int:
    from .harness import read_trace

    trace = read_trace(args.trace)
    regions = detect_stagnation(trace, min_len=args.min_stall)
    _emit(
        {
            "case_id": trace.case_id,
            "turns": len(trace.turns),
            "min_stall": args.min_stall,
            "regions": [
                {"start_turn": r.start_turn, "end_turn": r.end_turn, "length": r.length}
                for r in regions
            ],
            "stalled_turns": sum(r.length for r in regions),
        }
    )
    return 0


def _cmd_bound(args) -> int:
    from .harness import failure_bound, monte_carlo_failure

    doc: dict = {
        "epsilon": args.epsilon,
        "n": args.n,
        "bound": failure_bound(args.epsilon, args.n),
    }
    if args.mc_trials is not None:
        estimate = monte_carlo_failure(args.epsilon, args.n, args.mc_trials, args.seed)
        doc["mc_estimate"] = estimate.estimate
        doc["mc_half_width_95"] = estimate.half_width_95
        doc["mc_trials"] = args.mc_trials
        doc["seed"] = args.seed
    _emit(doc)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "gen-schema": _cmd_gen_schema,
    "run": _cmd_run,
    "experiment": _cmd_experiment,
    "analyze": _cmd_analyze,
    "bound": _cmd_bound,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InquestError as exc:
        json.dump(
            {"error": type(exc).__name__, "message": str(exc)},
            sys.stderr,
        )
        sys.stderr.write("\n")
        return 1
    except OSError as exc:
        json.dump({"error": "OSError", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
