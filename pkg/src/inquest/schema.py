"""Target schemas: information units partitioned into stages over a DAG.

A schema names every information unit an episode must elicit (its KIUs),
assigns each unit to exactly one stage, and orders stages by `requires`
edges that must stay acyclic. Schemas are immutable after construction and
safe to share between concurrent episodes.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from heapq import heappop, heappush

from .errors import (
    CyclicStages,
    DanglingStageRef,
    DuplicateId,
    EmptySchema,
    EmptyStage,
    InvalidParams,
    MalformedDocument,
)

SCHEMA_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Kiu:
    """One atomic information unit the inquiry must elicit."""

    id: str
    description: str
    stage_id: str
    answer_key: str
    mandatory: bool = True


@dataclass(frozen=True)
class Stage:
    id: str
    name: str
    requires: tuple[str, ...] = ()


@dataclass(frozen=True)
class TargetSchema:
    """The full elicitation target for one case.

    `stages` keeps document order; traversal order is computed by
    :func:`topological_order`. The union of per-stage unit sets is a strict
    partition of `kius`.
    """

    case_id: str
    stages: tuple[Stage, ...]
    kius: tuple[Kiu, ...]
    version: int = SCHEMA_FORMAT_VERSION

    @cached_property
    def kiu_ids(self) -> frozenset[str]:
        return frozenset(k.id for k in self.kius)

    @cached_property
    def kiu_by_id(self) -> dict[str, Kiu]:
        return {k.id: k for k in self.kius}

    @cached_property
    def stage_by_id(self) -> dict[str, Stage]:
        return {s.id: s for s in self.stages}

    @cached_property
    def kius_of_stage(self) -> dict[str, tuple[Kiu, ...]]:
        grouped: dict[str, list[Kiu]] = {s.id: [] for s in self.stages}
        for kiu in self.kius:
            grouped.setdefault(kiu.stage_id, []).append(kiu)
        return {sid: tuple(ks) for sid, ks in grouped.items()}

    @cached_property
    def key_to_kiu_ids(self) -> dict[str, frozenset[str]]:
        """Answer key -> ids of the units it confirms (usually one)."""
        grouped: dict[str, set[str]] = {}
        for kiu in self.kius:
            grouped.setdefault(kiu.answer_key, set()).add(kiu.id)
        return {key: frozenset(ids) for key, ids in grouped.items()}

    @cached_property
    def stage_rank(self) -> dict[str, int]:
        """Stage id -> position in the deterministic topological order."""
        return {sid: i for i, sid in enumerate(topological_order(self))}

    def mandatory_ids_of_stage(self, stage_id: str) -> frozenset[str]:
        return frozenset(
            k.id for k in self.kius_of_stage.get(stage_id, ()) if k.mandatory
        )


@dataclass(frozen=True)
class Finding:
    """One validation problem; `subject` is the offending id."""

    code: str
    subject: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.findings


_FINDING_ERRORS = {
    "empty_schema": EmptySchema,
    "duplicate_id": DuplicateId,
    "dangling_stage_ref": DanglingStageRef,
    "cyclic_stages": CyclicStages,
    "empty_stage": EmptyStage,
    "empty_answer_key": MalformedDocument,
}

_STAGE_FIELDS = {"id", "name", "requires"}
_KIU_FIELDS = {"id", "description", "stage_id", "answer_key", "mandatory"}
_TOP_FIELDS = {"case_id", "version", "stages", "kius"}


def _require_str(obj: dict, key: str, where: str, allow_empty: bool = False) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or (not allow_empty and not value):
        raise MalformedDocument(f"{where}: {key!r} must be a non-empty string")
    return value


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise MalformedDocument(f"{where}: unknown fields {sorted(extra)}")


def read_schema_document(document: str) -> TargetSchema:
    """Parse a schema document structurally, skipping invariant checks.

    Raises MalformedDocument for syntactic problems only; run the result
    through validate_schema to get invariant findings as data.  Most
    callers want parse_schema instead.
    """
    try:
        obj = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise MalformedDocument("top level must be an object")
    _reject_unknown(obj, _TOP_FIELDS, "schema")

    case_id = _require_str(obj, "case_id", "schema")
    version = obj.get("version")
    if version != SCHEMA_FORMAT_VERSION:
        raise MalformedDocument(
            f"schema: unsupported version {version!r} (expected {SCHEMA_FORMAT_VERSION})"
        )
    raw_stages = obj.get("stages")
    raw_kius = obj.get("kius")
    if not isinstance(raw_stages, list) or not isinstance(raw_kius, list):
        raise MalformedDocument("schema: 'stages' and 'kius' must be arrays")

    stages = []
    for raw in raw_stages:
        if not isinstance(raw, dict):
            raise MalformedDocument("stage entries must be objects")
        _reject_unknown(raw, _STAGE_FIELDS, "stage")
        sid = _require_str(raw, "id", "stage")
        name = _require_str(raw, "name", f"stage {sid}")
        requires = raw.get("requires", [])
        if not isinstance(requires, list) or not all(
            isinstance(r, str) and r for r in requires
        ):
            raise MalformedDocument(f"stage {sid}: 'requires' must be a list of ids")
        stages.append(Stage(id=sid, name=name, requires=tuple(requires)))

    kius = []
    for raw in raw_kius:
        if not isinstance(raw, dict):
            raise MalformedDocument("kiu entries must be objects")
        _reject_unknown(raw, _KIU_FIELDS, "kiu")
        kid = _require_str(raw, "id", "kiu")
        mandatory = raw.get("mandatory", True)
        if not isinstance(mandatory, bool):
            raise MalformedDocument(f"kiu {kid}: 'mandatory' must be a boolean")
        kius.append(
            Kiu(
                id=kid,
                description=_require_str(raw, "description", f"kiu {kid}"),
                stage_id=_require_str(raw, "stage_id", f"kiu {kid}"),
                answer_key=_require_str(raw, "answer_key", f"kiu {kid}", allow_empty=True),
                mandatory=mandatory,
            )
        )

    return TargetSchema(
        case_id=case_id, stages=tuple(stages), kius=tuple(kius), version=version
    )


def parse_schema(document: str) -> TargetSchema:
    """Parse a schema document and return a fully validated schema.

    Raises the typed error for the first validation finding instead of
    returning a schema that breaks an invariant.
    """
    schema = read_schema_document(document)
    report = validate_schema(schema)
    if not report.ok:
        first = report.findings[0]
        raise _FINDING_ERRORS[first.code](first.message)
    return schema


def schema_to_document(schema: TargetSchema) -> dict:
    return {
        "case_id": schema.case_id,
        "version": schema.version,
        "stages": [
            {"id": s.id, "name": s.name, "requires": list(s.requires)}
            for s in schema.stages
        ],
        "kius": [
            {
                "id": k.id,
                "description": k.description,
                "stage_id": k.stage_id,
                "answer_key": k.answer_key,
                "mandatory": k.mandatory,
            }
            for k in schema.kius
        ],
    }


def serialize_schema(schema: TargetSchema) -> str:
    """Stable text form; parse_schema(serialize_schema(s)) == s."""
    return json.dumps(schema_to_document(schema), indent=2) + "\n"


def validate_schema(schema: TargetSchema) -> ValidationReport:
    """Check every schema invariant; findings are data, not exceptions."""
    findings: list[Finding] = []

    if not schema.stages or not schema.kius:
        findings.append(
            Finding("empty_schema", schema.case_id, "schema needs at least one stage and one kiu")
        )

    seen_stage: set[str] = set()
    for stage in schema.stages:
        if stage.id in seen_stage:
            findings.append(
                Finding("duplicate_id", stage.id, f"duplicate stage id {stage.id!r}")
            )
        seen_stage.add(stage.id)

    seen_kiu: set[str] = set()
    for kiu in schema.kius:
        if kiu.id in seen_kiu:
            findings.append(
                Finding("duplicate_id", kiu.id, f"duplicate kiu id {kiu.id!r}")
            )
        seen_kiu.add(kiu.id)
        if kiu.stage_id not in seen_stage:
            findings.append(
                Finding(
                    "dangling_stage_ref",
                    kiu.id,
                    f"kiu {kiu.id!r} references missing stage {kiu.stage_id!r}",
                )
            )
        if not kiu.answer_key:
            findings.append(
                Finding("empty_answer_key", kiu.id, f"kiu {kiu.id!r} has an empty answer key")
            )

    for stage in schema.stages:
        for req in stage.requires:
            if req not in seen_stage:
                findings.append(
                    Finding(
                        "dangling_stage_ref",
                        stage.id,
                        f"stage {stage.id!r} requires missing stage {req!r}",
                    )
                )

    cyclic = _cycle_members(schema)
    for sid in sorted(cyclic):
        findings.append(
            Finding("cyclic_stages", sid, f"stage {sid!r} is part of a dependency cycle")
        )

    owned = {k.stage_id for k in schema.kius}
    for stage in schema.stages:
        if stage.id not in owned:
            findings.append(
                Finding("empty_stage", stage.id, f"stage {stage.id!r} owns no kius")
            )

    return ValidationReport(findings=tuple(findings))


def _cycle_members(schema: TargetSchema) -> set[str]:
    """Ids of stages that cannot be topologically ordered (cycle members)."""
    known = {s.id for s in schema.stages}
    indegree = {s.id: 0 for s in schema.stages}
    dependents: dict[str, list[str]] = {s.id: [] for s in schema.stages}
    for stage in schema.stages:
        for req in stage.requires:
            if req in known:
                indegree[stage.id] += 1
                dependents[req].append(stage.id)
    ready = [sid for sid, deg in indegree.items() if deg == 0]
    emitted = 0
    while ready:
        sid = ready.pop()
        emitted += 1
        for dep in dependents[sid]:
            indegree[dep] -= 1
            if indegree[dep] == 0:
                ready.append(dep)
    return {sid for sid, deg in indegree.items() if deg > 0}


def topological_order(schema: TargetSchema) -> list[str]:
    """Stage ids, dependencies first, ties broken by ascending stage id."""
    known = schema.stage_by_id
    indegree = {sid: 0 for sid in known}
    dependents: dict[str, list[str]] = {sid: [] for sid in known}
    for stage in schema.stages:
        for req in stage.requires:
            if req not in known:
                raise DanglingStageRef(
                    f"stage {stage.id!r} requires missing stage {req!r}"
                )
            indegree[stage.id] += 1
            dependents[req].append(stage.id)

    heap: list[str] = []
    for sid, deg in indegree.items():
        if deg == 0:
            heappush(heap, sid)
    order: list[str] = []
    while heap:
        sid = heappop(heap)
        order.append(sid)
        for dep in dependents[sid]:
            indegree[dep] -= 1
            if indegree[dep] == 0:
                heappush(heap, dep)
    if len(order) != len(known):
        stuck = sorted(sid for sid, deg in indegree.items() if deg > 0)
        raise CyclicStages(f"stage dependencies contain a cycle involving {stuck}")
    return order


def generate_synthetic_schema(
    stages: int,
    kius_per_stage: int,
    dependency_density: float = 0.0,
    seed: int = 0,
) -> TargetSchema:
    """Build a deterministic synthetic schema.

    Every non-root stage requires at least one earlier stage (a random
    backbone edge), and each remaining earlier pair becomes an extra edge
    with probability `dependency_density`, so the expected extra-edge count
    scales with that fraction. Output always passes validate_schema.
    """
    if stages < 1 or kius_per_stage < 1:
        raise InvalidParams("stages and kius_per_stage must both be >= 1")
    if not 0.0 <= dependency_density <= 1.0:
        raise InvalidParams("dependency_density must lie in [0, 1]")

    rng = random.Random(seed)
    stage_width = len(str(stages))
    kiu_width = len(str(kius_per_stage))
    stage_ids = [f"S{i:0{stage_width}d}" for i in range(1, stages + 1)]

    built_stages = []
    for i, sid in enumerate(stage_ids):
        requires: set[str] = set()
        if i > 0:
            requires.add(stage_ids[rng.randrange(i)])
            for j in range(i):
                if stage_ids[j] not in requires and rng.random() < dependency_density:
                    requires.add(stage_ids[j])
        built_stages.append(
            Stage(id=sid, name=f"stage {i + 1}", requires=tuple(sorted(requires)))
        )

    kius = []
    for i, sid in enumerate(stage_ids):
        for j in range(1, kius_per_stage + 1):
            kid = f"{sid.lower()}k{j:0{kiu_width}d}"
            kius.append(
                Kiu(
                    id=kid,
                    description=f"synthetic detail {j} of stage {i + 1}",
                    stage_id=sid,
                    answer_key=f"{kid}_fact",
                )
            )

    schema = TargetSchema(
        case_id=f"synthetic-{stages}x{kius_per_stage}-d{dependency_density}-s{seed}",
        stages=tuple(built_stages),
        kius=tuple(kius),
    )
    report = validate_schema(schema)
    if not report.ok:  # pragma: no cover - construction guarantees validity
        raise InvalidParams(f"generated schema failed validation: {report.findings}")
    return schema
