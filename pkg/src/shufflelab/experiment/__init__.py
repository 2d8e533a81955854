"""Trial manifest, schedule generation, and the session state machine."""

from .manifest import BLOCK_SIZES, PROBABILITIES, TransformManifest, build_manifest
from .responses import (
    NETWORK_AGENTS,
    AgentResponse,
    MissingResponsesError,
    ResponseFileError,
    load_network_responses,
)
from .schedule import (
    N_OPTIONS,
    N_PRACTICE,
    ScheduleError,
    Trial,
    canonical_test_plan,
    generate_schedule,
    schedule_from_json,
    schedule_to_json,
)
from .session import (
    CONFIRMATION,
    DONE,
    IN_TRIAL,
    INSTRUCTIONS,
    REST,
    REST_EVERY,
    Begin,
    Continue,
    DuplicateResponseError,
    IllegalEventError,
    InvalidResponseError,
    ResponseRecord,
    Session,
    SessionError,
    Submit,
    Timeout,
    advance,
)

__all__ = [
    "AgentResponse",
    "BLOCK_SIZES",
    "Begin",
    "CONFIRMATION",
    "Continue",
    "DONE",
    "DuplicateResponseError",
    "IN_TRIAL",
    "INSTRUCTIONS",
    "IllegalEventError",
    "InvalidResponseError",
    "MissingResponsesError",
    "N_OPTIONS",
    "N_PRACTICE",
    "NETWORK_AGENTS",
    "PROBABILITIES",
    "REST",
    "REST_EVERY",
    "ResponseFileError",
    "ResponseRecord",
    "ScheduleError",
    "Session",
    "SessionError",
    "Submit",
    "Timeout",
    "Trial",
    "TransformManifest",
    "advance",
    "build_manifest",
    "canonical_test_plan",
    "generate_schedule",
    "load_network_responses",
    "schedule_from_json",
    "schedule_to_json",
]
