"""Inquiry states, monotone transitions, and stagnation detection.

A state pairs the set of filled information units with a turn counter and
the current stage; transitions only ever grow the filled set. All values
here are immutable, so episodes never share mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ._kernels import scan_nongain_runs
from .errors import MalformedTrace, UnknownKiuId
from .schema import TargetSchema, topological_order

if TYPE_CHECKING:
    from .harness.trace import Trace

DEFAULT_STALL_MIN_LEN = 3


@dataclass(frozen=True)
class InquiryState:
    """Snapshot after `turn` committed turns."""

    turn: int
    filled: frozenset[str]
    current_stage: str | None
    transcript_len: int = 0


@dataclass(frozen=True)
class Transition:
    before: InquiryState
    after: InquiryState
    elicited: frozenset[str]
    progressive: bool


@dataclass(frozen=True)
class StagnationRegion:
    """Maximal window of turns with changing text but no information gain."""

    start_turn: int
    end_turn: int

    @property
    def length(self) -> int:
        return self.end_turn - self.start_turn + 1


def initial_state(schema: TargetSchema) -> InquiryState:
    """State before any question: nothing filled, first stage in order."""
    order = topological_order(schema) if schema.stages else []
    return InquiryState(
        turn=0,
        filled=frozenset(),
        current_stage=order[0] if order else None,
        transcript_len=0,
    )


def apply_elicitation(
    state: InquiryState, elicited: frozenset[str] | set[str], schema: TargetSchema
) -> Transition:
    """Fold newly confirmed unit ids into the state.

    Already-filled ids are absorbed without error; the transition is
    progressive only when the filled set strictly grows.
    """
    unknown = set(elicited) - schema.kiu_ids
    if unknown:
        raise UnknownKiuId(f"elicited ids not in schema: {sorted(unknown)}")
    new_ids = frozenset(elicited) - state.filled
    after = InquiryState(
        turn=state.turn + 1,
        filled=state.filled | new_ids,
        current_stage=state.current_stage,
        transcript_len=state.transcript_len + 1,
    )
    return Transition(
        before=state, after=after, elicited=new_ids, progressive=bool(new_ids)
    )


def is_complete(state: InquiryState, schema: TargetSchema) -> bool:
    return state.filled == schema.kiu_ids


def detect_stagnation(
    trace: Trace, min_len: int = DEFAULT_STALL_MIN_LEN
) -> list[StagnationRegion]:
    """Find all maximal stagnation regions of at least `min_len` turns.

    A turn belongs to a region when it gained no new unit while its
    question text differs from the previous turn's (the first turn's text
    counts as new). Consecutive identical questions leave the transcript
    context unchanged and are excluded, which may split a region.
    """
    if min_len < 1:
        raise MalformedTrace("min_len must be >= 1")
    turns = trace.turns
    for i, rec in enumerate(turns):
        if rec.turn != i + 1:
            raise MalformedTrace(
                f"turn indices must be contiguous from 1; saw {rec.turn} at position {i}"
            )
    if not turns:
        return []

    progressive = np.fromiter(
        (rec.progressive for rec in turns), dtype=np.uint8, count=len(turns)
    )
    text_changed = np.ones(len(turns), dtype=np.uint8)
    for i in range(1, len(turns)):
        text_changed[i] = turns[i].question.text != turns[i - 1].question.text

    runs = scan_nongain_runs(progressive, text_changed, min_len)
    return [StagnationRegion(start_turn=s + 1, end_turn=e + 1) for s, e in runs]
