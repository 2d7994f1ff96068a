"""inquest: state-machine-guided structured inquiry, simulated and measured.

The package models an interview as the progressive elicitation of key
information units arranged in dependency-ordered stages, provides a
deterministic answering witness, several inquirer strategies with known
failure modes, and a harness for running and scoring episodes.
"""

from .agents import AgentConfig, AgentKind, InquirerAgent, InquirerView, make_agent
from .controller import (
    ControllerConfig,
    ControllerMode,
    Termination,
    TurnClass,
    TurnRecord,
    select_targets,
    should_advance_stage,
    should_terminate,
    step,
)
from .errors import (
    BridgeError,
    CyclicStages,
    DanglingStageRef,
    DuplicateId,
    EmptySchema,
    EmptyStage,
    EpisodeComplete,
    EpisodeTerminated,
    HandshakeTimeout,
    InquestError,
    InvalidParams,
    LaunchFailed,
    MalformedDocument,
    MalformedTrace,
    MissingFact,
    ProtocolViolation,
    SchemaError,
    UnknownKiuId,
)
from .schema import (
    Kiu,
    Stage,
    TargetSchema,
    ValidationReport,
    generate_synthetic_schema,
    parse_schema,
    serialize_schema,
    topological_order,
    validate_schema,
)
from .state import (
    InquiryState,
    StagnationRegion,
    apply_elicitation,
    detect_stagnation,
    initial_state,
    is_complete,
)
from .witness import (
    Answer,
    AnswerKind,
    FactBase,
    OracleWitness,
    Question,
    build_witness,
    parse_facts,
    serialize_facts,
)

__version__ = "0.1.0"

__all__ = [
    "AgentConfig",
    "AgentKind",
    "Answer",
    "AnswerKind",
    "BridgeError",
    "ControllerConfig",
    "ControllerMode",
    "CyclicStages",
    "DanglingStageRef",
    "DuplicateId",
    "EmptySchema",
    "EmptyStage",
    "EpisodeComplete",
    "EpisodeTerminated",
    "FactBase",
    "HandshakeTimeout",
    "InquestError",
    "InquirerAgent",
    "InquirerView",
    "InquiryState",
    "InvalidParams",
    "Kiu",
    "LaunchFailed",
    "MalformedDocument",
    "MalformedTrace",
    "MissingFact",
    "OracleWitness",
    "ProtocolViolation",
    "Question",
    "SchemaError",
    "Stage",
    "StagnationRegion",
    "TargetSchema",
    "Termination",
    "TurnClass",
    "TurnRecord",
    "UnknownKiuId",
    "ValidationReport",
    "apply_elicitation",
    "build_witness",
    "detect_stagnation",
    "generate_synthetic_schema",
    "initial_state",
    "is_complete",
    "make_agent",
    "parse_facts",
    "parse_schema",
    "select_targets",
    "serialize_facts",
    "serialize_schema",
    "should_advance_stage",
    "should_terminate",
    "step",
    "topological_order",
    "validate_schema",
]
