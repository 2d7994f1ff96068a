"""Run one full question/answer episode to a decisive outcome."""

from __future__ import annotations

from ..agents import AgentConfig, make_agent
from ..controller import (
    ControllerConfig,
    Termination,
    select_targets,
    should_terminate,
    step,
)
from ..errors import ProtocolViolation
from ..schema import TargetSchema
from ..state import initial_state
from ..witness import AnswerKind, FactBase, build_witness

from .trace import Trace


def run_episode(
    schema: TargetSchema,
    fact_base: FactBase,
    agent_config: AgentConfig,
    controller_config: ControllerConfig | None = None,
    seed: int | None = None,
) -> Trace:
    """select → ask → answer → commit, until the controller says stop.

    Fully deterministic for a given (configs, seed).  A wire-protocol
    violation from an external agent ends the episode as Stalled with
    the diagnostic preserved; other errors propagate.
    """
    controller_config = controller_config or ControllerConfig()
    witness = build_witness(fact_base, schema)
    agent = make_agent(agent_config, schema, seed)
    state = initial_state(schema)
    records = []
    last_kind: AnswerKind | None = None
    consecutive_no_gain = 0
    annotation: str | None = None
    try:
        while True:
            outcome = should_terminate(
                state, schema, controller_config, consecutive_no_gain
            )
            if outcome is not Termination.CONTINUE:
                break
            view = select_targets(state, schema, last_kind)
            try:
                question = agent.next_question(view)
            except ProtocolViolation as exc:
                outcome = Termination.STALLED
                annotation = f"protocol violation: {exc}"
                break
            answer = witness.answer(question)
            record, state = step(state, question, answer, schema, controller_config)
            records.append(record)
            last_kind = answer.kind
            consecutive_no_gain = 0 if record.progressive else consecutive_no_gain + 1
    finally:
        agent.close()
    return Trace(
        case_id=schema.case_id,
        agent_config=agent_config,
        controller_config=controller_config,
        seed=agent_config.seed if seed is None else seed,
        turns=tuple(records),
        outcome=outcome,
        final_filled_count=len(state.filled),
        annotation=annotation,
    )
