"""Episode traces and their newline-delimited JSON file format.

A trace file carries one header line, one line per turn, and a footer
line with the outcome and computed metrics:

    {"record": "header", "case_id": ..., "agent": {...}, ...}
    {"record": "turn", "turn": 1, ...}
    {"record": "footer", "outcome": ..., "metrics": {...}}

Reading back a written trace reconstructs an equal Trace object; the
footer metrics are derived data and are recomputed on demand rather
than stored on the object.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

from ..agents import AgentConfig, AgentKind
from ..controller import ControllerConfig, ControllerMode, Termination, TurnClass, TurnRecord
from ..errors import MalformedTrace
from ..schema import TargetSchema
from ..witness import Answer, AnswerKind, Question

TRACE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Trace:
    case_id: str
    agent_config: AgentConfig
    controller_config: ControllerConfig
    seed: int
    turns: tuple[TurnRecord, ...]
    outcome: Termination
    final_filled_count: int
    annotation: str | None = None


def _agent_to_doc(config: AgentConfig) -> dict:
    return {
        "kind": config.kind.value,
        "epsilon": config.epsilon,
        "redundancy_bias": config.redundancy_bias,
        "unknown_bias": config.unknown_bias,
        "recovery_prob": config.recovery_prob,
        "seed": config.seed,
        "external_command": config.external_command,
        "handshake_timeout_s": config.handshake_timeout_s,
    }


def _agent_from_doc(doc: dict) -> AgentConfig:
    return AgentConfig(
        kind=AgentKind(doc["kind"]),
        epsilon=doc["epsilon"],
        redundancy_bias=doc["redundancy_bias"],
        unknown_bias=doc["unknown_bias"],
        recovery_prob=doc["recovery_prob"],
        seed=doc["seed"],
        external_command=doc["external_command"],
        handshake_timeout_s=doc["handshake_timeout_s"],
    )


def _controller_to_doc(config: ControllerConfig) -> dict:
    return {
        "mode": config.mode.value,
        "turn_budget": config.turn_budget,
        "stall_abort": config.stall_abort,
    }


def _controller_from_doc(doc: dict) -> ControllerConfig:
    return ControllerConfig(
        mode=ControllerMode(doc["mode"]),
        turn_budget=doc["turn_budget"],
        stall_abort=doc["stall_abort"],
    )


def _turn_to_doc(record: TurnRecord) -> dict:
    return {
        "record": "turn",
        "turn": record.turn,
        "question": {
            "turn": record.question.turn,
            "text": record.question.text,
            "target_keys": sorted(record.question.target_keys),
        },
        "answer": {
            "kind": record.answer.kind.value,
            "elicited_keys": sorted(record.answer.elicited_keys),
            "text": record.answer.text,
        },
        "elicited": list(record.elicited),
        "progressive": record.progressive,
        "classification": record.classification.value,
        "stage_before": record.stage_before,
        "stage_after": record.stage_after,
        "filled_count": record.filled_count,
    }


def _turn_from_doc(doc: dict) -> TurnRecord:
    q = doc["question"]
    a = doc["answer"]
    return TurnRecord(
        turn=doc["turn"],
        question=Question(
            turn=q["turn"], text=q["text"], target_keys=frozenset(q["target_keys"])
        ),
        answer=Answer(
            kind=AnswerKind(a["kind"]),
            elicited_keys=frozenset(a["elicited_keys"]),
            text=a["text"],
        ),
        elicited=tuple(doc["elicited"]),
        progressive=doc["progressive"],
        classification=TurnClass(doc["classification"]),
        stage_before=doc["stage_before"],
        stage_after=doc["stage_after"],
        filled_count=doc["filled_count"],
    )


def trace_lines(trace: Trace, schema: TargetSchema) -> Iterable[str]:
    """Yield the serialized lines of a trace file, newline-free."""
    from .metrics import compute_metrics

    metrics = compute_metrics(trace, schema)
    header = {
        "record": "header",
        "format": TRACE_FORMAT_VERSION,
        "case_id": trace.case_id,
        "agent": _agent_to_doc(trace.agent_config),
        "controller": _controller_to_doc(trace.controller_config),
        "seed": trace.seed,
        "annotation": trace.annotation,
    }
    yield json.dumps(header, sort_keys=True)
    for record in trace.turns:
        yield json.dumps(_turn_to_doc(record), sort_keys=True)
    footer = {
        "record": "footer",
        "outcome": trace.outcome.value,
        "final_filled_count": trace.final_filled_count,
        "metrics": {
            "completeness": metrics.completeness,
            "redundancy": metrics.redundancy,
            "unknown_rate": metrics.unknown_rate,
            "turns_used": metrics.turns_used,
        },
    }
    yield json.dumps(footer, sort_keys=True)


def write_trace(trace: Trace, schema: TargetSchema, out: IO[str] | str | Path) -> None:
    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8") as fh:
            write_trace(trace, schema, fh)
        return
    for line in trace_lines(trace, schema):
        out.write(line + "\n")


def read_trace(source: IO[str] | str | Path) -> Trace:
    """Parse a trace file back into a Trace; footer metrics are checked
    for presence but not trusted (they are recomputable)."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return read_trace(fh)
    header: dict | None = None
    footer: dict | None = None
    turns: list[TurnRecord] = []
    for raw in source:
        raw = raw.strip()
        if not raw:
            continue
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedTrace(f"bad trace line: {exc}")
        kind = doc.get("record")
        if kind == "header":
            if header is not None:
                raise MalformedTrace("duplicate header line")
            header = doc
        elif kind == "turn":
            turns.append(_turn_from_doc(doc))
        elif kind == "footer":
            footer = doc
        else:
            raise MalformedTrace(f"unknown record kind {kind!r}")
    if header is None or footer is None:
        raise MalformedTrace("trace file missing header or footer")
    return Trace(
        case_id=header["case_id"],
        agent_config=_agent_from_doc(header["agent"]),
        controller_config=_controller_from_doc(header["controller"]),
        seed=header["seed"],
        turns=tuple(turns),
        outcome=Termination(footer["outcome"]),
        final_filled_count=footer["final_filled_count"],
        annotation=header.get("annotation"),
    )
