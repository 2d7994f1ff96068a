"""Deterministic oracle witness over a fixed fact base.

The witness answers exactly what a question targets: for every targeted
answer key it knows, it returns the bound fact with no elaboration; if the
question targets nothing it knows, it answers "unknown". Responses depend
only on the question, never on history.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import MalformedDocument, MissingFact
from .schema import TargetSchema

UNKNOWN_TEXT = "unknown"


class AnswerKind(str, Enum):
    FACT = "fact"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FactBase:
    """Ground-truth facts keyed by answer key."""

    case_id: str
    facts: dict[str, str]
    schema_ref: str


@dataclass(frozen=True)
class Question:
    turn: int
    text: str
    target_keys: frozenset[str] = field(default_factory=frozenset)


@dataclass(frozen=True)
class Answer:
    kind: AnswerKind
    elicited_keys: frozenset[str]
    text: str


def parse_facts(document: str) -> FactBase:
    """Parse a fact-base document: {"case_id": ..., "facts": {key: text}}."""
    try:
        obj = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedDocument("top level must be an object")
    extra = set(obj) - {"case_id", "facts"}
    if extra:
        raise MalformedDocument(f"fact base: unknown fields {sorted(extra)}")
    case_id = obj.get("case_id")
    facts = obj.get("facts")
    if not isinstance(case_id, str) or not case_id:
        raise MalformedDocument("fact base: 'case_id' must be a non-empty string")
    if not isinstance(facts, dict):
        raise MalformedDocument("fact base: 'facts' must be an object")
    for key, text in facts.items():
        if not isinstance(text, str) or not text:
            raise MalformedDocument(f"fact base: fact {key!r} must be a non-empty string")
    return FactBase(case_id=case_id, facts=dict(facts), schema_ref=case_id)


def serialize_facts(fact_base: FactBase) -> str:
    return (
        json.dumps({"case_id": fact_base.case_id, "facts": fact_base.facts}, indent=2)
        + "\n"
    )


class OracleWitness:
    """Immutable respondent bound to one schema's answer keys."""

    def __init__(self, facts: dict[str, str], case_id: str):
        self._facts = dict(facts)
        self.case_id = case_id

    @property
    def known_keys(self) -> frozenset[str]:
        return frozenset(self._facts)

    def answer(self, question: Question) -> Answer:
        matched = sorted(self._facts.keys() & question.target_keys)
        if not matched:
            return Answer(
                kind=AnswerKind.UNKNOWN, elicited_keys=frozenset(), text=UNKNOWN_TEXT
            )
        return Answer(
            kind=AnswerKind.FACT,
            elicited_keys=frozenset(matched),
            text="; ".join(self._facts[k] for k in matched),
        )


def build_witness(fact_base: FactBase, schema: TargetSchema) -> OracleWitness:
    """Bind a fact base to a schema, failing loudly on coverage gaps.

    Only facts for keys the schema actually uses are served; extra entries
    in the fact base are dropped so the witness cannot confirm anything
    outside the elicitation target.
    """
    needed = {k.answer_key for k in schema.kius}
    for key in sorted(needed):
        if key not in fact_base.facts:
            raise MissingFact(key)
    return OracleWitness(
        facts={k: fact_base.facts[k] for k in needed}, case_id=fact_base.case_id
    )


def answer(witness: OracleWitness, question: Question) -> Answer:
    return witness.answer(question)
