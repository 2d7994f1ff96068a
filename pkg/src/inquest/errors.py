"""Exception types shared across the package."""

from __future__ import annotations


class InquestError(Exception):
    """Base class for all package errors."""


class SchemaError(InquestError):
    """Base class for schema parsing/validation failures."""


class MalformedDocument(SchemaError):
    """Document text is not syntactically valid for its format."""


class DuplicateId(SchemaError):
    """Two stages or two information units share an id."""


class DanglingStageRef(SchemaError):
    """A stage or unit references a stage id that does not exist."""


class CyclicStages(SchemaError):
    """Stage dependency edges form a cycle."""


class EmptyStage(SchemaError):
    """A stage owns no information units."""


class EmptySchema(SchemaError):
    """Schema has no stages or no information units at all."""


class InvalidParams(InquestError):
    """Numeric or structural parameters outside their allowed range."""


class UnknownKiuId(InquestError):
    """An elicitation names an id not present in the governing schema."""


class MalformedTrace(InquestError):
    """Trace turn records are inconsistent (gaps, bad indices, bad counts)."""


class MissingFact(InquestError):
    """Fact base lacks an entry for a schema answer key."""

    def __init__(self, answer_key: str):
        super().__init__(f"no fact for answer key {answer_key!r}")
        self.answer_key = answer_key


class EpisodeComplete(InquestError):
    """An agent was asked for a question after all units were filled."""


class EpisodeTerminated(InquestError):
    """A controller step was attempted after the episode ended."""


class BridgeError(InquestError):
    """Base class for external-agent subprocess failures."""


class LaunchFailed(BridgeError):
    """External agent process could not be started or died immediately."""


class HandshakeTimeout(BridgeError):
    """External agent did not complete the hello/ready exchange in time."""


class ProtocolViolation(BridgeError):
    """External agent sent a message outside the wire protocol."""
