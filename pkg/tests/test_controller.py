from __future__ import annotations

import pytest

from inquest.controller import (
    ControllerConfig,
    ControllerMode,
    Termination,
    TurnClass,
    effective_turn_budget,
    select_targets,
    should_advance_stage,
    should_terminate,
    step,
)
from inquest.errors import EpisodeTerminated, InvalidParams
from inquest.state import InquiryState, initial_state
from inquest.witness import Answer, AnswerKind, Question


def fact_answer(*keys: str) -> Answer:
    return Answer(kind=AnswerKind.FACT, elicited_keys=frozenset(keys), text="ok")


UNKNOWN = Answer(kind=AnswerKind.UNKNOWN, elicited_keys=frozenset(), text="unknown")


def ask(turn: int, *keys: str) -> Question:
    return Question(turn=turn, text=f"q{turn}", target_keys=frozenset(keys))


def filled_state(schema, ids, turn=0):
    base = initial_state(schema)
    state = InquiryState(
        turn=turn,
        filled=frozenset(ids),
        current_stage=base.current_stage,
        transcript_len=turn,
    )
    return state


class TestSelectTargets:
    def test_fresh_case_a_lists_stage_one(self, case_a):
        schema, _ = case_a
        view = select_targets(initial_state(schema), schema)
        assert view.turn == 1
        assert view.current_stage == "S1"
        assert view.unmet_mandatory == tuple(f"s1k{i}" for i in range(1, 9))
        assert len(view.unmet_all) == 40
        assert view.unmet_all[:8] == view.unmet_mandatory

    def test_partially_filled_stage(self, case_a):
        schema, _ = case_a
        state = filled_state(schema, {"s1k1", "s1k3", "s1k7"}, turn=3)
        view = select_targets(state, schema)
        assert view.turn == 4
        assert view.unmet_mandatory == ("s1k2", "s1k4", "s1k5", "s1k6", "s1k8")
        assert view.filled_count == 3

    def test_complete_state_is_empty(self, case_a):
        schema, _ = case_a
        state = filled_state(schema, schema.kiu_ids, turn=40)
        view = select_targets(state, schema)
        assert view.unmet_mandatory == ()
        assert view.unmet_all == ()

    def test_unmet_all_ordered_by_stage_depth_then_id(self, case_b):
        schema, _ = case_b
        state = filled_state(schema, {"s1k1", "s2k1", "s3k1"})
        view = select_targets(state, schema)
        ranks = [schema.stage_rank[schema.kiu_by_id[i].stage_id] for i in view.unmet_all]
        assert ranks == sorted(ranks)

    def test_last_answer_kind_passthrough(self, case_a):
        schema, _ = case_a
        view = select_targets(initial_state(schema), schema, AnswerKind.UNKNOWN)
        assert view.last_answer_kind is AnswerKind.UNKNOWN


class TestStep:
    def test_progress(self, case_a):
        schema, _ = case_a
        record, after = step(
            initial_state(schema), ask(1, "s1k1_fact"), fact_answer("s1k1_fact"), schema
        )
        assert record.classification is TurnClass.PROGRESS
        assert record.elicited == ("s1k1",)
        assert record.progressive
        assert after.turn == 1 and after.filled == {"s1k1"}

    def test_redundant(self, case_a):
        schema, _ = case_a
        state = filled_state(schema, {"s1k1"}, turn=1)
        record, after = step(
            state, ask(2, "s1k1_fact"), fact_answer("s1k1_fact"), schema
        )
        assert record.classification is TurnClass.REDUNDANT
        assert not record.progressive
        assert after.filled == state.filled

    def test_unknown(self, case_a):
        schema, _ = case_a
        record, _ = step(initial_state(schema), ask(1), UNKNOWN, schema)
        assert record.classification is TurnClass.UNKNOWN

    def test_no_gain_on_unmapped_target(self, case_a):
        schema, _ = case_a
        record, _ = step(
            initial_state(schema),
            ask(1, "no_such_key"),
            Answer(kind=AnswerKind.FACT, elicited_keys=frozenset(), text="hmm"),
            schema,
        )
        assert record.classification is TurnClass.NO_GAIN

    def test_progress_wins_over_redundant(self, case_a):
        schema, _ = case_a
        state = filled_state(schema, {"s1k1"}, turn=1)
        record, _ = step(
            state,
            ask(2, "s1k1_fact", "s1k2_fact"),
            fact_answer("s1k1_fact", "s1k2_fact"),
            schema,
        )
        assert record.classification is TurnClass.PROGRESS
        assert record.elicited == ("s1k2",)

    def test_stage_advances_when_mandatory_done(self, case_a):
        schema, _ = case_a
        almost = {f"s1k{i}" for i in range(1, 8)}
        state = filled_state(schema, almost, turn=7)
        record, after = step(
            state, ask(8, "s1k8_fact"), fact_answer("s1k8_fact"), schema
        )
        assert record.stage_before == "S1"
        assert record.stage_after == "S2"
        assert after.current_stage == "S2"

    def test_soft_fsm_skips_fully_answered_stages(self, case_a):
        schema, _ = case_a
        everything_but_last = set(schema.kiu_ids) - {"s5k8"}
        state = filled_state(schema, everything_but_last - {"s1k1"}, turn=38)
        # one answer closes S1; S2..S4 already complete, so the pointer
        # lands directly on the first stage with unmet units
        _, after = step(state, ask(39, "s1k1_fact"), fact_answer("s1k1_fact"), schema)
        assert after.current_stage == "S5"

    def test_pass_through_stage_trails_elicited_unit(self, case_a):
        schema, _ = case_a
        config = ControllerConfig(mode=ControllerMode.PASS_THROUGH)
        record, after = step(
            initial_state(schema),
            ask(1, "s3k2_fact"),
            fact_answer("s3k2_fact"),
            schema,
            config,
        )
        assert after.current_stage == "S3"
        record, after = step(after, ask(2), UNKNOWN, schema, config)
        assert after.current_stage == "S3"  # unchanged without gain

    def test_step_after_completion_raises(self, case_a):
        schema, _ = case_a
        state = filled_state(schema, schema.kiu_ids, turn=40)
        with pytest.raises(EpisodeTerminated):
            step(state, ask(41), UNKNOWN, schema)

    def test_step_after_budget_raises(self, case_a):
        schema, _ = case_a
        config = ControllerConfig(turn_budget=2)
        state = filled_state(schema, {"s1k1"}, turn=2)
        with pytest.raises(EpisodeTerminated):
            step(state, ask(3), UNKNOWN, schema, config)


class TestAdvanceGate:
    def test_diamond_blocks_on_incomplete_predecessor(self, case_b):
        schema, _ = case_b
        s4 = {k.id for k in schema.kius if k.stage_id == "S4"}
        s2 = {k.id for k in schema.kius if k.stage_id == "S2"}
        state = InquiryState(
            turn=14, filled=frozenset(s4 | s2), current_stage="S4", transcript_len=14
        )
        # S4 requires S2 and S3; S3 untouched, so S4 may not be left
        assert not should_advance_stage(state, schema)
        s3 = {k.id for k in schema.kius if k.stage_id == "S3"}
        state = InquiryState(
            turn=21,
            filled=frozenset(s4 | s2 | s3),
            current_stage="S4",
            transcript_len=21,
        )
        assert should_advance_stage(state, schema)

    def test_incomplete_current_stage_blocks(self, case_a):
        schema, _ = case_a
        state = filled_state(schema, {"s1k1"})
        assert not should_advance_stage(state, schema)


class TestTermination:
    def test_complete_beats_budget(self, case_a):
        schema, _ = case_a
        config = ControllerConfig(turn_budget=5)
        state = filled_state(schema, schema.kiu_ids, turn=9)
        assert (
            should_terminate(state, schema, config, consecutive_no_gain=99)
            is Termination.COMPLETE
        )

    def test_budget_beats_stall(self, case_a):
        schema, _ = case_a
        config = ControllerConfig(turn_budget=5, stall_abort=2)
        state = filled_state(schema, {"s1k1"}, turn=5)
        assert (
            should_terminate(state, schema, config, consecutive_no_gain=4)
            is Termination.BUDGET_EXHAUSTED
        )

    def test_stall_abort_unset_never_stalls(self, case_a):
        schema, _ = case_a
        state = filled_state(schema, {"s1k1"}, turn=5)
        assert (
            should_terminate(state, schema, ControllerConfig(), 10_000)
            is Termination.CONTINUE
        )

    def test_stall_abort_triggers(self, case_a):
        schema, _ = case_a
        config = ControllerConfig(stall_abort=3)
        state = filled_state(schema, {"s1k1"}, turn=5)
        assert (
            should_terminate(state, schema, config, consecutive_no_gain=3)
            is Termination.STALLED
        )
        assert (
            should_terminate(state, schema, config, consecutive_no_gain=2)
            is Termination.CONTINUE
        )

    def test_default_budget_is_three_x(self, case_a, case_c):
        schema_a, _ = case_a
        schema_c, _ = case_c
        assert effective_turn_budget(ControllerConfig(), schema_a) == 120
        assert effective_turn_budget(ControllerConfig(), schema_c) == 135
        assert effective_turn_budget(ControllerConfig(turn_budget=7), schema_a) == 7


def test_config_validation():
    with pytest.raises(InvalidParams):
        ControllerConfig(turn_budget=0)
    with pytest.raises(InvalidParams):
        ControllerConfig(stall_abort=-1)
