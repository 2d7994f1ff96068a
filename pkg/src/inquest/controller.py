"""Turn loop mechanics: views, answer application, stage advancement,
turn classification, and termination.

The controller is deliberately free of strategy: agents decide *what to
ask*, the witness decides *what is answered*, and this module applies the
result to the state machine and decides when the episode stops.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .agents import InquirerView
from .errors import EpisodeTerminated, InvalidParams
from .schema import TargetSchema, topological_order
from .state import InquiryState, apply_elicitation, is_complete
from .witness import Answer, AnswerKind, Question

TURN_BUDGET_FACTOR = 3


class ControllerMode(str, Enum):
    # soft_fsm: the controller owns the stage pointer and advances it
    # along the dependency order as stages complete.  pass_through: the
    # stage pointer merely trails whatever the elicited units imply, with
    # no enforcement — the unguarded configuration.
    SOFT_FSM = "soft_fsm"
    PASS_THROUGH = "pass_through"


class TurnClass(str, Enum):
    PROGRESS = "progress"
    REDUNDANT = "redundant"
    UNKNOWN = "unknown"
    NO_GAIN = "no_gain"


class Termination(str, Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"
    STALLED = "stalled"
    CONTINUE = "continue"


@dataclass(frozen=True)
class ControllerConfig:
    mode: ControllerMode = ControllerMode.SOFT_FSM
    turn_budget: int | None = None
    stall_abort: int | None = None

    def __post_init__(self):
        if self.turn_budget is not None and self.turn_budget < 1:
            raise InvalidParams("turn_budget must be positive when given")
        if self.stall_abort is not None and self.stall_abort < 1:
            raise InvalidParams("stall_abort must be positive when given")


@dataclass(frozen=True)
class TurnRecord:
    """One committed turn, as written to traces.

    `elicited` holds the ids newly filled this turn (re-confirmations of
    already-filled units do not appear); `progressive` is equivalent to
    `elicited` being non-empty.
    """

    turn: int
    question: Question
    answer: Answer
    elicited: tuple[str, ...]
    progressive: bool
    classification: TurnClass
    stage_before: str | None
    stage_after: str | None
    filled_count: int


def effective_turn_budget(config: ControllerConfig, schema: TargetSchema) -> int:
    if config.turn_budget is not None:
        return config.turn_budget
    return TURN_BUDGET_FACTOR * len(schema.kius)


def select_targets(
    state: InquiryState,
    schema: TargetSchema,
    last_answer_kind: AnswerKind | None = None,
) -> InquirerView:
    """Build the agent-facing view for the upcoming turn.

    `unmet_mandatory` lists unfilled mandatory units of the current stage
    in id order; `unmet_all` lists every unfilled unit ordered by stage
    depth, then id.
    """
    rank = schema.stage_rank
    unmet_mandatory: list[str] = []
    for kiu in schema.kius_of_stage.get(state.current_stage, ()):
        if kiu.mandatory and kiu.id not in state.filled:
            unmet_mandatory.append(kiu.id)
    unmet_mandatory.sort()
    unmet_all = sorted(
        (k.id for k in schema.kius if k.id not in state.filled),
        key=lambda i: (rank[schema.kiu_by_id[i].stage_id], i),
    )
    return InquirerView(
        turn=state.turn + 1,
        current_stage=state.current_stage,
        unmet_mandatory=tuple(unmet_mandatory),
        unmet_all=tuple(unmet_all),
        filled_count=len(state.filled),
        schema_size=len(schema.kius),
        last_answer_kind=last_answer_kind,
    )


def _classify(
    question: Question,
    answer: Answer,
    newly_filled: tuple[str, ...],
    filled_before: frozenset[str],
    schema: TargetSchema,
) -> TurnClass:
    if newly_filled:
        return TurnClass.PROGRESS
    if answer.kind is AnswerKind.UNKNOWN:
        return TurnClass.UNKNOWN
    if question.target_keys:
        targeted: set[str] = set()
        for key in question.target_keys:
            targeted.update(schema.key_to_kiu_ids.get(key, ()))
        if targeted and targeted <= filled_before:
            return TurnClass.REDUNDANT
    return TurnClass.NO_GAIN


def _stage_complete(stage_id: str, filled: frozenset[str], schema: TargetSchema) -> bool:
    return schema.mandatory_ids_of_stage(stage_id) <= filled


def should_advance_stage(state: InquiryState, schema: TargetSchema) -> bool:
    """True when the current stage may be left behind.

    Requires the current stage's mandatory units filled AND each of its
    required predecessor stages complete — an incomplete predecessor
    blocks advancement regardless of local completeness.
    """
    sid = state.current_stage
    if sid is None:
        return False
    if not _stage_complete(sid, state.filled, schema):
        return False
    return all(
        _stage_complete(req, state.filled, schema)
        for req in schema.stage_by_id[sid].requires
    )


def _advance_stage_soft_fsm(filled: frozenset[str], schema: TargetSchema) -> str:
    """First stage in dependency order whose mandatory units are unmet.

    When every stage is complete the pointer rests on the last stage.
    Because the scan runs in topological order, the pointer can never
    land past a stage with an incomplete required predecessor.
    """
    order = topological_order(schema)
    for sid in order:
        if not _stage_complete(sid, filled, schema):
            return sid
    return order[-1]


def _advance_stage_pass_through(
    newly_filled: tuple[str, ...], current: str | None, schema: TargetSchema
) -> str | None:
    if not newly_filled:
        return current
    rank = schema.stage_rank
    first = min(newly_filled, key=lambda i: (rank[schema.kiu_by_id[i].stage_id], i))
    return schema.kiu_by_id[first].stage_id


def step(
    state: InquiryState,
    question: Question,
    answer: Answer,
    schema: TargetSchema,
    config: ControllerConfig | None = None,
) -> tuple[TurnRecord, InquiryState]:
    """Commit one turn: map answer keys to units, update state and stage.

    Verified gains are never discarded; a non-progressive turn leaves the
    filled set untouched.
    """
    config = config or ControllerConfig()
    if is_complete(state, schema):
        raise EpisodeTerminated("all units already filled")
    if state.turn >= effective_turn_budget(config, schema):
        raise EpisodeTerminated("turn budget already spent")

    elicited: set[str] = set()
    if answer.kind is AnswerKind.FACT:
        for key in answer.elicited_keys:
            elicited.update(schema.key_to_kiu_ids.get(key, ()))
    transition = apply_elicitation(state, elicited, schema)
    after = transition.after
    newly_filled = tuple(sorted(transition.elicited))

    if config.mode is ControllerMode.SOFT_FSM:
        stage_after = _advance_stage_soft_fsm(after.filled, schema)
    else:
        stage_after = _advance_stage_pass_through(
            newly_filled, state.current_stage, schema
        )
    if stage_after != after.current_stage:
        after = InquiryState(
            turn=after.turn,
            filled=after.filled,
            current_stage=stage_after,
            transcript_len=after.transcript_len,
        )

    record = TurnRecord(
        turn=after.turn,
        question=question,
        answer=answer,
        elicited=newly_filled,
        progressive=bool(newly_filled),
        classification=_classify(question, answer, newly_filled, state.filled, schema),
        stage_before=state.current_stage,
        stage_after=stage_after,
        filled_count=len(after.filled),
    )
    return record, after


def should_terminate(
    state: InquiryState,
    schema: TargetSchema,
    config: ControllerConfig,
    consecutive_no_gain: int,
) -> Termination:
    """Completion wins over budget; budget wins over stall."""
    if is_complete(state, schema):
        return Termination.COMPLETE
    if state.turn >= effective_turn_budget(config, schema):
        return Termination.BUDGET_EXHAUSTED
    if config.stall_abort is not None and consecutive_no_gain >= config.stall_abort:
        return Termination.STALLED
    return Termination.CONTINUE
