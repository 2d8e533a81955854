"""Session state machine.

States: instructions -> in_trial <-> confirmation (-> rest every 10
completed test trials) -> done.  Rest never occurs during practice.  The
machine is driven by four events (begin, submit, continue, timeout) and is
a pure function of its event sequence, which makes event-log replay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .schedule import Trial

REST_EVERY = 10

INSTRUCTIONS = "instructions"
IN_TRIAL = "in_trial"
CONFIRMATION = "confirmation"
REST = "rest"
DONE = "done"

CONFIDENCE_LEVELS = (1, 2, 3, 4, 5)


class SessionError(Exception):
    """Base for session protocol violations."""


class IllegalEventError(SessionError):
    """Event not legal in the current state."""


class InvalidResponseError(SessionError):
    """Response payload outside the allowed ranges."""


class DuplicateResponseError(SessionError):
    """A trial already has a recorded response."""


@dataclass(frozen=True)
class ResponseRecord:
    """One agent's answer to one trial."""

    trial_id: int
    chosen_option: int
    confidence: int
    reaction_time_ms: float
    timestamp: float
    correct: bool

    def to_dict(self) -> dict:
        return {
            "trial_id": self.trial_id,
            "chosen_option": self.chosen_option,
            "confidence": self.confidence,
            "reaction_time_ms": self.reaction_time_ms,
            "timestamp": self.timestamp,
            "correct": self.correct,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ResponseRecord":
        return cls(
            trial_id=d["trial_id"],
            chosen_option=d["chosen_option"],
            confidence=d["confidence"],
            reaction_time_ms=d["reaction_time_ms"],
            timestamp=d["timestamp"],
            correct=d["correct"],
        )


@dataclass(frozen=True)
class Begin:
    pass


@dataclass(frozen=True)
class Submit:
    choice_index: int
    confidence: int
    reaction_time_ms: float
    timestamp: float = 0.0


@dataclass(frozen=True)
class Continue:
    pass


@dataclass(frozen=True)
class Timeout:
    pass


Event = Begin | Submit | Continue | Timeout


@dataclass(frozen=True)
class Session:
    """Immutable session snapshot; advance() returns the next snapshot."""

    session_id: str
    agent_id: str
    schedule: tuple[Trial, ...]
    cursor: int = 0
    state: str = INSTRUCTIONS
    responses: tuple[ResponseRecord, ...] = field(default_factory=tuple)

    @property
    def current_trial(self) -> Trial | None:
        if self.state in (IN_TRIAL, CONFIRMATION, REST) and self.cursor < len(self.schedule):
            return self.schedule[self.cursor]
        return None

    @property
    def n_practice(self) -> int:
        return sum(1 for t in self.schedule if t.phase == "practice")

    @property
    def completed_test_trials(self) -> int:
        return max(0, len(self.responses) - self.n_practice)


def _leave_confirmation(session: Session) -> Session:
    nxt = session.cursor + 1
    if nxt >= len(session.schedule):
        return replace(session, cursor=nxt, state=DONE)
    finished = session.schedule[session.cursor]
    if finished.phase == "test" and session.completed_test_trials % REST_EVERY == 0:
        return replace(session, cursor=nxt, state=REST)
    return replace(session, cursor=nxt, state=IN_TRIAL)


def advance(session: Session, event: Event) -> Session:
    """Apply one event; raises SessionError subclasses on protocol breaks."""
    state = session.state

    if isinstance(event, Begin):
        if state != INSTRUCTIONS:
            raise IllegalEventError(f"begin not legal in state {state}")
        if not session.schedule:
            return replace(session, state=DONE)
        return replace(session, state=IN_TRIAL, cursor=0)

    if isinstance(event, Submit):
        if state != IN_TRIAL:
            raise IllegalEventError(f"submit not legal in state {state}")
        trial = session.schedule[session.cursor]
        if event.confidence not in CONFIDENCE_LEVELS:
            raise InvalidResponseError(f"confidence must be 1-5, got {event.confidence}")
        if not 0 <= event.choice_index < len(trial.options):
            raise InvalidResponseError(f"choice index out of range: {event.choice_index}")
        if event.reaction_time_ms < 0:
            raise InvalidResponseError("reaction time must be non-negative")
        if any(r.trial_id == trial.trial_id for r in session.responses):
            raise DuplicateResponseError(f"trial {trial.trial_id} already answered")
        record = ResponseRecord(
            trial_id=trial.trial_id,
            chosen_option=event.choice_index,
            confidence=event.confidence,
            reaction_time_ms=event.reaction_time_ms,
            timestamp=event.timestamp,
            correct=event.choice_index == trial.correct_option,
        )
        return replace(
            session, state=CONFIRMATION, responses=session.responses + (record,)
        )

    if isinstance(event, (Continue, Timeout)):
        if state == CONFIRMATION:
            return _leave_confirmation(session)
        if state == REST and isinstance(event, Continue):
            return replace(session, state=IN_TRIAL)
        raise IllegalEventError(f"{type(event).__name__.lower()} not legal in state {state}")

    raise IllegalEventError(f"unknown event {event!r}")
