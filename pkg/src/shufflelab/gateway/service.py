"""HTTP/JSON API for running sessions from a browser.

Endpoints:

* ``POST /sessions`` {agent_id} -> session_id, state, instructions
* ``GET  /sessions/{id}/current`` -> phase payload (stimulus, options, progress)
* ``POST /sessions/{id}/response`` {choice_index, confidence, reaction_time_ms}
* ``POST /sessions/{id}/continue`` -> advance past instructions/confirmation/rest
* ``GET  /sessions/{id}/export`` -> response log, one JSON record per line

The confirmation screen auto-advances server-side once its timeout elapses
(evaluated lazily on reads and events, no background timers).  Correctness
is only ever disclosed for practice trials.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from ..experiment.session import (
    CONFIRMATION,
    DONE,
    IN_TRIAL,
    INSTRUCTIONS,
    REST,
    Begin,
    Continue,
    DuplicateResponseError,
    IllegalEventError,
    InvalidResponseError,
    Session,
    Submit,
)
from .stimulus import stimulus_png_base64
from .store import SessionStore, UnknownSessionError

INSTRUCTIONS_TEXT = (
    "Each trial shows one image and five category options. Choose the option "
    "closest to the object you see, rate your confidence from 1 (least) to 5 "
    "(most), and submit. Practice trials tell you whether you were right; the "
    "main trials do not. After every 10 main trials you get a short rest "
    "screen. The confirmation screen moves on by itself after a few seconds, "
    "or press the spacebar."
)


class CreateSessionBody(BaseModel):
    agent_id: str = "anonymous"


class SubmitBody(BaseModel):
    choice_index: int
    confidence: int
    reaction_time_ms: float = 0.0


def _progress(session: Session) -> dict:
    return {"completed": len(session.responses), "total": len(session.schedule)}


def _label(store: SessionStore, fine_id: int) -> str:
    names = store.dataset.fine_names
    return names[fine_id] if fine_id < len(names) else f"class {fine_id}"


def create_app(store: SessionStore, instructions: str = INSTRUCTIONS_TEXT) -> FastAPI:
    app = FastAPI(title="shufflelab gateway")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    def _get_session(session_id: str) -> Session:
        try:
            return store.get(session_id)
        except UnknownSessionError:
            raise HTTPException(status_code=404, detail="unknown session")

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        session = store.create_session(body.agent_id)
        return {
            "session_id": session.session_id,
            "state": session.state,
            "instructions": instructions,
        }

    @app.get("/sessions/{session_id}/current")
    def current(session_id: str):
        _get_session(session_id)
        with store.lock(session_id):
            session = store.poll_timeout(session_id)
            payload = {
                "phase": session.state,
                "trial_index": None,
                "total": len(session.schedule),
                "rest": session.state == REST,
                "progress": _progress(session),
            }
            if session.state == INSTRUCTIONS:
                payload["instructions"] = instructions
            elif session.state == IN_TRIAL:
                trial = session.current_trial
                payload.update(
                    trial_index=session.cursor,
                    image=stimulus_png_base64(trial, store.dataset, store.config.display_size),
                    options=[_label(store, opt) for opt in trial.options],
                    option_ids=list(trial.options),
                    practice_feedback_enabled=trial.phase == "practice",
                    trial_phase=trial.phase,
                )
            elif session.state == CONFIRMATION:
                trial = session.current_trial
                last = session.responses[-1]
                payload.update(
                    trial_index=session.cursor,
                    auto_advance_ms=store.confirm_remaining_ms(session_id),
                    feedback_correct=last.correct if trial.phase == "practice" else None,
                    trial_phase=trial.phase,
                )
            elif session.state == REST:
                payload.update(
                    test_completed=session.completed_test_trials,
                    test_total=sum(1 for t in session.schedule if t.phase == "test"),
                )
            return payload

    @app.post("/sessions/{session_id}/response")
    def respond(session_id: str, body: SubmitBody):
        _get_session(session_id)
        with store.lock(session_id):
            session = store.poll_timeout(session_id)
            trial = session.current_trial
            try:
                session = store.apply_event(
                    session_id,
                    Submit(
                        choice_index=body.choice_index,
                        confidence=body.confidence,
                        reaction_time_ms=body.reaction_time_ms,
                    ),
                )
            except InvalidResponseError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            except (DuplicateResponseError, IllegalEventError) as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            correct = None
            if trial is not None and trial.phase == "practice":
                correct = session.responses[-1].correct
            return {"accepted": True, "correct": correct, "next_state": session.state}

    @app.post("/sessions/{session_id}/continue")
    def advance_screen(session_id: str):
        _get_session(session_id)
        with store.lock(session_id):
            before = store.get(session_id).state
            session = store.poll_timeout(session_id)
            if before == CONFIRMATION and session.state != CONFIRMATION:
                # The timeout beat the click; the click's intent is satisfied.
                return {"state": session.state}
            try:
                if session.state == INSTRUCTIONS:
                    session = store.apply_event(session_id, Begin())
                else:
                    session = store.apply_event(session_id, Continue())
            except IllegalEventError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            return {"state": session.state}

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str):
        _get_session(session_id)
        with store.lock(session_id):
            lines = store.export_lines(session_id)
        return PlainTextResponse("\n".join(lines) + ("\n" if lines else ""))

    return app
