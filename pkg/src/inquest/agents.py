"""Inquirer strategies.

One deterministic strategy drives questions straight from the unmet-unit
view (`soft_fsm`); three stochastic baseline models reproduce documented
long-horizon failure modes of prompt-only inquirers:

* `pure_model` — ignores stage structure; misjudgments knock it off
  track into no-progress phases that lengthen as the transcript grows.
* `stage_prompt_model` — follows a one-turn-stale stage view and, after a
  misjudgment, re-asks the same target in a paraphrase loop.
* `equilibria_model` — like `pure_model`, but self-checking lets it
  escape an off-track phase with probability `recovery_prob` per turn.

Every agent consumes its private RNG in a fixed, documented order, so a
given (config, seed, view sequence) always replays the same questions.
Per turn: one misjudgment die; on a misjudgment, one error-mode draw,
at most one candidate-index draw, one loop-length draw for the
stage-prompted kind, and one recovery check for the equilibria kind;
off-track pure/equilibria turns redraw error mode and candidate index.
Good turns and the deterministic strategy draw nothing beyond the die.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum

from .errors import EpisodeComplete, InvalidParams
from .schema import TargetSchema
from .witness import AnswerKind, Question

# Paraphrase loops: geometric length, mean 4 turns, hard cap.
PARAPHRASE_MEAN = 4.0
PARAPHRASE_CAP = 12

# Off-track phases for the pure/equilibria kinds lengthen with the
# transcript: a misjudgment at turn t starts a phase of
# round(PHASE_DRAG * (stages - 1)**PHASE_DEPTH_POWER * t) turns, capped
# below.  Deeper stage graphs re-orient disproportionately slowly, which
# is what produces the completeness collapse on deeper cases.
PHASE_DRAG = 0.004
PHASE_DEPTH_POWER = 2
PHASE_CAP = 48

TARGET_TEMPLATE = "Regarding {stage}: please state {detail}."
PARAPHRASE_SUFFIX = " (rephrased {n})"
PROBE_TEMPLATE = "Please describe any further circumstances not yet covered. (probe {n})"


class AgentKind(str, Enum):
    SOFT_FSM = "soft_fsm"
    PURE_MODEL = "pure_model"
    STAGE_PROMPT_MODEL = "stage_prompt_model"
    EQUILIBRIA_MODEL = "equilibria_model"
    EXTERNAL = "external"


@dataclass(frozen=True)
class InquirerView:
    """Everything an agent may condition on for one turn."""

    turn: int
    current_stage: str | None
    unmet_mandatory: tuple[str, ...]
    unmet_all: tuple[str, ...]
    filled_count: int
    schema_size: int
    last_answer_kind: AnswerKind | None = None


@dataclass(frozen=True)
class AgentConfig:
    kind: AgentKind
    epsilon: float = 0.0
    redundancy_bias: float = 0.0
    unknown_bias: float = 0.0
    recovery_prob: float = 0.0
    seed: int = 0
    external_command: str | None = None
    handshake_timeout_s: float = 10.0

    def __post_init__(self):
        for name in ("epsilon", "redundancy_bias", "unknown_bias", "recovery_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidParams(f"{name} must lie in [0, 1], got {value}")
        if self.redundancy_bias + self.unknown_bias > 1.0 + 1e-12:
            raise InvalidParams("redundancy_bias + unknown_bias must not exceed 1")
        if self.kind is AgentKind.EXTERNAL and not self.external_command:
            raise InvalidParams("external agents need external_command")


def _geometric(rng: random.Random, mean: float, cap: int) -> int:
    """Geometric draw on {1, 2, ...} with the given mean, capped."""
    p = 1.0 / mean
    draw = 1 + int(math.log(1.0 - rng.random()) / math.log(1.0 - p))
    return min(draw, cap)


class InquirerAgent:
    """Interface shared by all strategies."""

    kind: AgentKind

    def next_question(self, view: InquirerView) -> Question:
        raise NotImplementedError

    def close(self) -> None:
        """Release any resources (subprocesses); idempotent."""


class SoftFsmAgent(InquirerAgent):
    """Deterministic: always target the first unmet mandatory unit.

    Never re-targets a filled unit and never emits an empty target set, so
    its traces have zero redundancy and zero unknown rate by construction.
    """

    kind = AgentKind.SOFT_FSM

    def __init__(self, config: AgentConfig, schema: TargetSchema):
        self.config = config
        self.schema = schema

    def next_question(self, view: InquirerView) -> Question:
        if not view.unmet_all:
            raise EpisodeComplete("all units filled; no question to ask")
        target = view.unmet_mandatory[0] if view.unmet_mandatory else view.unmet_all[0]
        return _target_question(self.schema, target, view.turn)


def _target_question(schema: TargetSchema, kiu_id: str, turn: int, suffix: str = "") -> Question:
    kiu = schema.kiu_by_id[kiu_id]
    stage = schema.stage_by_id[kiu.stage_id]
    text = TARGET_TEMPLATE.format(stage=stage.name, detail=kiu.description) + suffix
    return Question(turn=turn, text=text, target_keys=frozenset({kiu.answer_key}))


class BaselineAgent(InquirerAgent):
    """Shared machinery for the three stochastic baseline kinds."""

    def __init__(self, config: AgentConfig, schema: TargetSchema, seed: int | None = None):
        self.config = config
        self.schema = schema
        self._rng = random.Random(config.seed if seed is None else seed)
        rank = schema.stage_rank
        self._ordered_ids = [
            k.id for k in sorted(schema.kius, key=lambda k: (rank[k.stage_id], k.id))
        ]
        self._phase_remaining = 0
        self._phase_target: str | None = None
        self._phase_text_mutations = 0
        self._probe_count = 0
        self._stale_stage: str | None = None
        # Instrumentation: misjudgment die outcomes, for calibration tests.
        self.turns_seen = 0
        self.misjudgment_count = 0

    # -- per-kind hooks -------------------------------------------------

    def _good_target(self, view: InquirerView) -> str:
        """Target chosen on an on-track turn."""
        return view.unmet_all[0]

    def _phase_length(self, view: InquirerView) -> int:
        depth = max(len(self.schema.stages) - 1, 0)
        return min(PHASE_CAP, round(PHASE_DRAG * depth**PHASE_DEPTH_POWER * view.turn))

    # -- common flow ----------------------------------------------------

    def next_question(self, view: InquirerView) -> Question:
        if not view.unmet_all:
            raise EpisodeComplete("all units filled; no question to ask")
        self.turns_seen += 1
        question: Question
        if self._rng.random() < self.config.epsilon:
            self.misjudgment_count += 1
            question = self._begin_misjudgment(view)
        elif self._phase_remaining > 0:
            self._phase_remaining -= 1
            question = self._offtrack_question(view)
        else:
            question = _target_question(self.schema, self._good_target(view), view.turn)
        self._stale_stage = view.current_stage
        return question

    def _begin_misjudgment(self, view: InquirerView) -> Question:
        was_on_track = self._phase_remaining == 0
        question, target = self._error_question(view)
        self._phase_target = target
        self._phase_text_mutations = 0
        self._phase_remaining = self._phase_length(view)
        # The self-checking kind gets one shot at catching a *fresh*
        # derailment before it settles into an off-track phase.  Inside a
        # phase the check compares against already-drifted goals, so
        # re-misjudgments there go unchecked — self-checking alone does
        # not recover an established drift.
        if (
            self.config.kind is AgentKind.EQUILIBRIA_MODEL
            and was_on_track
            and self._phase_remaining > 0
            and self._rng.random() < self.config.recovery_prob
        ):
            self._phase_remaining = 0
        return question

    def _offtrack_question(self, view: InquirerView) -> Question:
        question, _ = self._error_question(view)
        return question

    def _error_question(self, view: InquirerView) -> tuple[Question, str | None]:
        """One erroneous question: redundant, off-schema, or out-of-stage.

        Falls back across modes when a mode has no candidates (nothing
        filled yet, or no out-of-stage unit left).
        """
        mode_draw = self._rng.random()
        if mode_draw < self.config.redundancy_bias:
            mode = "redundant"
        elif mode_draw < self.config.redundancy_bias + self.config.unknown_bias:
            mode = "unknown"
        else:
            mode = "wrong"

        unmet = set(view.unmet_all)
        if mode == "wrong":
            mandatory_here = set(view.unmet_mandatory)
            candidates = [i for i in view.unmet_all if i not in mandatory_here]
            if candidates:
                target = candidates[self._rng.randrange(len(candidates))]
                return _target_question(self.schema, target, view.turn), target
            mode = "redundant"
        if mode == "redundant":
            filled = [i for i in self._ordered_ids if i not in unmet]
            if filled:
                target = filled[self._rng.randrange(len(filled))]
                return _target_question(self.schema, target, view.turn), target
            mode = "unknown"
        self._probe_count += 1
        text = PROBE_TEMPLATE.format(n=self._probe_count)
        return Question(turn=view.turn, text=text, target_keys=frozenset()), None


class PureModelAgent(BaselineAgent):
    kind = AgentKind.PURE_MODEL


class EquilibriaModelAgent(BaselineAgent):
    kind = AgentKind.EQUILIBRIA_MODEL


class StagePromptAgent(BaselineAgent):
    """Stage-scripted baseline: stale stage view plus paraphrase loops."""

    kind = AgentKind.STAGE_PROMPT_MODEL

    def _good_target(self, view: InquirerView) -> str:
        stage_id = self._stale_stage if self._stale_stage is not None else view.current_stage
        unmet = set(view.unmet_all)
        for kiu in self.schema.kius_of_stage.get(stage_id, ()):
            if kiu.mandatory and kiu.id in unmet:
                return kiu.id
        return view.unmet_all[0]

    def _phase_length(self, view: InquirerView) -> int:
        return _geometric(self._rng, PARAPHRASE_MEAN, PARAPHRASE_CAP)

    def _offtrack_question(self, view: InquirerView) -> Question:
        """Re-ask the looped target with mutated wording."""
        self._phase_text_mutations += 1
        suffix = PARAPHRASE_SUFFIX.format(n=self._phase_text_mutations)
        if self._phase_target is None:
            self._probe_count += 1
            text = PROBE_TEMPLATE.format(n=self._probe_count) + suffix
            return Question(turn=view.turn, text=text, target_keys=frozenset())
        return _target_question(self.schema, self._phase_target, view.turn, suffix)


def make_agent(
    config: AgentConfig, schema: TargetSchema, seed: int | None = None
) -> InquirerAgent:
    """Instantiate the strategy for `config`; `seed` overrides config.seed."""
    if config.kind is AgentKind.SOFT_FSM:
        return SoftFsmAgent(config, schema)
    if config.kind is AgentKind.PURE_MODEL:
        return PureModelAgent(config, schema, seed)
    if config.kind is AgentKind.STAGE_PROMPT_MODEL:
        return StagePromptAgent(config, schema, seed)
    if config.kind is AgentKind.EQUILIBRIA_MODEL:
        return EquilibriaModelAgent(config, schema, seed)
    if config.kind is AgentKind.EXTERNAL:
        from .bridge import ExternalAgent

        return ExternalAgent(config, schema)
    raise InvalidParams(f"unknown agent kind {config.kind!r}")
