"""Durable session store.

Event sourcing over JSON-lines: every session has an append-only log whose
replay reconstructs the exact state (the state machine is a pure function
of its event sequence).  A partially written trailing line (crash during
append) is ignored on replay, so a crash loses at most the in-flight event.
"""

from __future__ import annotations

import json
import os
import time
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..experiment.schedule import Trial, canonical_test_plan, generate_schedule
from ..experiment.session import (
    CONFIRMATION,
    Begin,
    Continue,
    Session,
    Submit,
    Timeout,
    advance,
)
from ..imagecore.image import Dataset
from ..transforms.spec import TransformKind


class StoreError(Exception):
    pass


class UnknownSessionError(StoreError):
    pass


@dataclass
class ServiceConfig:
    """Operational knobs for the response-collection service."""

    data_dir: Path
    listen: str = "127.0.0.1:8421"
    seed_policy: str = "random"  # "random" or "fixed:<integer>"
    n_practice: int = 17
    trial_count_overrides: dict = field(default_factory=dict)
    confirm_timeout_ms: int = 3000
    display_size: int = 128

    def __post_init__(self):
        self.data_dir = Path(self.data_dir)
        if self.confirm_timeout_ms <= 0:
            raise ValueError("confirmation timeout must be positive")
        if self.seed_policy != "random" and not self.seed_policy.startswith("fixed:"):
            raise ValueError(f"bad seed policy {self.seed_policy!r}")

    def next_seed(self) -> int:
        if self.seed_policy.startswith("fixed:"):
            return int(self.seed_policy.split(":", 1)[1])
        return int.from_bytes(os.urandom(8), "little")

    def test_plan(self):
        plan = canonical_test_plan()
        if not self.trial_count_overrides:
            return plan
        overrides = {TransformKind(k): v for k, v in self.trial_count_overrides.items()}
        return [(spec, overrides.get(spec.kind, count)) for spec, count in plan]


_EVENT_TYPES = {"begin": Begin, "continue": Continue, "timeout": Timeout}


def _event_to_dict(event, ts: float) -> dict:
    if isinstance(event, Submit):
        return {
            "type": "submit",
            "choice_index": event.choice_index,
            "confidence": event.confidence,
            "reaction_time_ms": event.reaction_time_ms,
            "ts": ts,
        }
    for name, cls in _EVENT_TYPES.items():
        if isinstance(event, cls):
            return {"type": name, "ts": ts}
    raise StoreError(f"unloggable event {event!r}")


def _event_from_dict(doc: dict):
    kind = doc.get("type")
    if kind == "submit":
        return Submit(
            choice_index=doc["choice_index"],
            confidence=doc["confidence"],
            reaction_time_ms=doc["reaction_time_ms"],
            timestamp=doc.get("ts", 0.0),
        )
    if kind in _EVENT_TYPES:
        return _EVENT_TYPES[kind]()
    raise StoreError(f"unknown logged event type {kind!r}")


class SessionStore:
    """Sessions backed by one JSONL event log each, replayed at startup."""

    def __init__(self, config: ServiceConfig, dataset: Dataset, clock=time.monotonic):
        self.config = config
        self.dataset = dataset
        self.clock = clock
        self.sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._confirm_entered: dict[str, float] = {}
        self._registry_lock = threading.Lock()
        self.sessions_dir = config.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._replay_all()

    # -- persistence ------------------------------------------------------

    def _log_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.jsonl"

    def _append(self, session_id: str, doc: dict) -> None:
        line = json.dumps(doc, separators=(",", ":"))
        with open(self._log_path(session_id), "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def _replay_all(self) -> None:
        for path in sorted(self.sessions_dir.glob("*.jsonl")):
            session = self._replay_file(path)
            if session is not None:
                self.sessions[session.session_id] = session
                self._locks[session.session_id] = threading.Lock()
                if session.state == CONFIRMATION:
                    self._confirm_entered[session.session_id] = self.clock()

    def _replay_file(self, path: Path) -> Session | None:
        session = None
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                raw = raw.strip()
                if not raw:
                    continue
                try:
                    doc = json.loads(raw)
                except json.JSONDecodeError:
                    break  # partial trailing write; drop the in-flight event
                if doc.get("type") == "created":
                    session = Session(
                        session_id=doc["session_id"],
                        agent_id=doc["agent_id"],
                        schedule=tuple(Trial.from_dict(d) for d in doc["schedule"]),
                    )
                elif session is not None:
                    session = advance(session, _event_from_dict(doc))
                else:
                    raise StoreError(f"{path}: event before creation record")
        return session

    # -- API used by the service ------------------------------------------

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            if session_id not in self._locks:
                raise UnknownSessionError(session_id)
            return self._locks[session_id]

    def create_session(self, agent_id: str) -> Session:
        session_id = uuid.uuid4().hex
        seed = self.config.next_seed()
        schedule = generate_schedule(
            self.dataset,
            seed,
            n_practice=self.config.n_practice,
            test_plan=self.config.test_plan(),
        )
        session = Session(
            session_id=session_id,
            agent_id=agent_id,
            schedule=tuple(schedule),
        )
        with self._registry_lock:
            self.sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
        self._append(
            session_id,
            {
                "type": "created",
                "session_id": session_id,
                "agent_id": agent_id,
                "seed": seed,
                "schedule": [t.to_dict() for t in schedule],
                "ts": time.time(),
            },
        )
        return session

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(session_id)
        return session

    def apply_event(self, session_id: str, event) -> Session:
        """Advance the session and durably log the event (caller holds the lock)."""
        session = self.get(session_id)
        ts = time.time()
        if isinstance(event, Submit) and event.timestamp == 0.0:
            event = Submit(event.choice_index, event.confidence, event.reaction_time_ms, ts)
        new_session = advance(session, event)
        self._append(session_id, _event_to_dict(event, ts))
        self.sessions[session_id] = new_session
        if new_session.state == CONFIRMATION:
            self._confirm_entered[session_id] = self.clock()
        else:
            self._confirm_entered.pop(session_id, None)
        return new_session

    def poll_timeout(self, session_id: str) -> Session:
        """Fire the confirmation auto-advance if its window has elapsed."""
        session = self.get(session_id)
        if session.state != CONFIRMATION:
            return session
        entered = self._confirm_entered.get(session_id)
        if entered is None:
            self._confirm_entered[session_id] = self.clock()
            return session
        if (self.clock() - entered) * 1000.0 >= self.config.confirm_timeout_ms:
            return self.apply_event(session_id, Timeout())
        return session

    def confirm_remaining_ms(self, session_id: str) -> float | None:
        entered = self._confirm_entered.get(session_id)
        if entered is None:
            return None
        elapsed = (self.clock() - entered) * 1000.0
        return max(0.0, self.config.confirm_timeout_ms - elapsed)

    def export_lines(self, session_id: str) -> list[str]:
        session = self.get(session_id)
        return [json.dumps(r.to_dict(), separators=(",", ":")) for r in session.responses]
