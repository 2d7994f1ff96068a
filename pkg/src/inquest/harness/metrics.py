"""Per-trace scoring.

Four numbers summarise a trace: the fraction of schema units elicited,
the fraction of questions aimed at already-filled units, the fraction of
questions that matched nothing, and the raw turn count.  Rate
denominators are total questions asked, not schema size.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..controller import TurnClass
from ..errors import MalformedTrace
from ..schema import TargetSchema

from .trace import Trace


@dataclass(frozen=True)
class Metrics:
    completeness: float
    redundancy: float
    unknown_rate: float
    turns_used: int


def compute_metrics(trace: Trace, schema: TargetSchema) -> Metrics:
    """Score one trace against its schema.

    Raises MalformedTrace when turn indices are not 1..n contiguous or
    the footer fill count disagrees with the progressive turns.
    """
    turns = trace.turns
    for i, record in enumerate(turns, start=1):
        if record.turn != i:
            raise MalformedTrace(f"turn index {record.turn} at position {i}")
    gained = set()
    for record in turns:
        gained.update(record.elicited)
    if len(gained) != trace.final_filled_count:
        raise MalformedTrace(
            f"final_filled_count={trace.final_filled_count} but "
            f"{len(gained)} distinct ids were elicited"
        )
    total = len(turns)
    redundant = sum(1 for r in turns if r.classification is TurnClass.REDUNDANT)
    unknown = sum(1 for r in turns if r.classification is TurnClass.UNKNOWN)
    size = len(schema.kius)
    return Metrics(
        completeness=(trace.final_filled_count / size) if size else 1.0,
        redundancy=(redundant / total) if total else 0.0,
        unknown_rate=(unknown / total) if total else 0.0,
        turns_used=total,
    )
