"""Bundled demonstration cases.

Three synthetic interview cases of graded structural difficulty ship
with the package: ``case_a`` (5 chained stages, 40 units), ``case_b``
(6 stages with diamond dependencies, 42 units) and ``case_c`` (7 stages
with dense cross-dependencies, 45 units).  Each comes with a complete
fact base, so a deterministic witness can always answer.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import InvalidParams
from .schema import TargetSchema, parse_schema
from .witness import FactBase, parse_facts

CASE_IDS = ("case_a", "case_b", "case_c")


def _read_data(name: str) -> str:
    return resources.files("inquest.data").joinpath(name).read_text("utf-8")


def load_case_schema(case_id: str) -> TargetSchema:
    if case_id not in CASE_IDS:
        raise InvalidParams(f"unknown bundled case {case_id!r}; have {CASE_IDS}")
    return parse_schema(_read_data(f"{case_id}.schema.json"))


def load_case_facts(case_id: str) -> FactBase:
    if case_id not in CASE_IDS:
        raise InvalidParams(f"unknown bundled case {case_id!r}; have {CASE_IDS}")
    return parse_facts(_read_data(f"{case_id}.facts.json"))


def load_case(case_id: str) -> tuple[TargetSchema, FactBase]:
    return load_case_schema(case_id), load_case_facts(case_id)


def load_reference_results() -> dict:
    """Published reference numbers from an external LLM-driven evaluation.

    Used by reporting to print a side-by-side comparison column; the
    simulation does not consume these numbers.
    """
    return json.loads(_read_data("reference_results.json"))
