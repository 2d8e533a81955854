"""Network response fixtures.

Per-trial network answers arrive as CSV with header
``trial_id,agent,chosen_option`` and agents drawn from
{resnet50, resnet101, vone}.  Correctness is computed against the
schedule; every (test trial, agent) pair must be present.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .schedule import Trial

NETWORK_AGENTS = ("vone", "resnet101", "resnet50")


class ResponseFileError(ValueError):
    """Fixture violates the CSV contract."""


class MissingResponsesError(ResponseFileError):
    """One or more (trial, agent) pairs absent from the fixture."""

    def __init__(self, gaps: list[tuple[int, str]]):
        self.gaps = gaps
        preview = ", ".join(f"(trial {t}, {a})" for t, a in gaps[:8])
        more = "" if len(gaps) <= 8 else f" and {len(gaps) - 8} more"
        super().__init__(f"missing responses: {preview}{more}")


@dataclass(frozen=True)
class AgentResponse:
    trial_id: int
    agent: str
    chosen_option: int
    correct: bool


def load_network_responses(source, schedule: list[Trial]) -> list[AgentResponse]:
    """Parse and validate a network fixture against the test schedule."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()

    reader = csv.DictReader(io.StringIO(text))
    required = {"trial_id", "agent", "chosen_option"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise ResponseFileError(
            f"header must contain trial_id,agent,chosen_option, got {reader.fieldnames}"
        )

    test_trials = {t.trial_id: t for t in schedule if t.phase == "test"}
    seen: dict[tuple[int, str], AgentResponse] = {}
    for line_no, row in enumerate(reader, start=2):
        try:
            trial_id = int(row["trial_id"])
            chosen = int(row["chosen_option"])
        except (TypeError, ValueError):
            raise ResponseFileError(f"line {line_no}: non-integer trial_id or chosen_option")
        agent = (row["agent"] or "").strip()
        if agent not in NETWORK_AGENTS:
            raise ResponseFileError(
                f"line {line_no}: unknown agent {agent!r} (expected one of {NETWORK_AGENTS})"
            )
        if trial_id not in test_trials:
            raise ResponseFileError(f"line {line_no}: trial {trial_id} not in test schedule")
        trial = test_trials[trial_id]
        if not 0 <= chosen < len(trial.options):
            raise ResponseFileError(f"line {line_no}: chosen_option {chosen} out of range")
        key = (trial_id, agent)
        if key in seen:
            raise ResponseFileError(f"line {line_no}: duplicate entry for {key}")
        seen[key] = AgentResponse(
            trial_id=trial_id,
            agent=agent,
            chosen_option=chosen,
            correct=chosen == trial.correct_option,
        )

    gaps = [
        (tid, agent)
        for tid in sorted(test_trials)
        for agent in NETWORK_AGENTS
        if (tid, agent) not in seen
    ]
    if gaps:
        raise MissingResponsesError(gaps)
    return [seen[k] for k in sorted(seen)]
