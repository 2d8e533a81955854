"""Correctness table and dummy-coded design matrix.

Humans are the reference group (the intercept column); each network gets an
offset dummy, so the intercept estimates human accuracy and each dummy the
network-minus-human gap.  Rows are ordered agent-major (all human rows,
then each network) and trial-ordered within an agent; serial diagnostics
depend on row order, so it is fixed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

AGENTS = ("human", "vone", "resnet101", "resnet50")
AGENT_DISPLAY = {
    "human": "Humans",
    "vone": "VOneResNet50",
    "resnet101": "ResNet101",
    "resnet50": "ResNet50",
}


class DesignError(ValueError):
    """Correctness data cannot form a valid design."""


@dataclass(frozen=True)
class CorrectnessRow:
    """One agent's correctness on one trial, with the transform grouping keys."""

    trial_id: int
    family: str  # transform kind value, e.g. "grid_shuffle" or "baseline"
    block_size: int | None
    probability: float | None
    agent: str
    correct: bool

    def __post_init__(self):
        if self.agent not in AGENTS:
            raise DesignError(f"unknown agent {self.agent!r}")


@dataclass
class CorrectnessTable:
    rows: list[CorrectnessRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def validate(self) -> None:
        """Every trial id must appear exactly once per agent."""
        seen = set()
        trials: dict[int, set] = {}
        for row in self.rows:
            key = (row.trial_id, row.agent)
            if key in seen:
                raise DesignError(f"duplicate correctness row for {key}")
            seen.add(key)
            trials.setdefault(row.trial_id, set()).add(row.agent)
        for trial_id, agents in trials.items():
            missing = set(AGENTS) - agents
            if missing:
                raise DesignError(f"trial {trial_id} missing agents {sorted(missing)}")


# Report families and their row filters.  "grid16" is every grid-family
# configuration with 16-pixel blocks, both probabilities.
FAMILY_FILTERS = {
    "all": lambda r: True,
    "baseline": lambda r: r.family == "baseline",
    "randomized_shuffle": lambda r: r.family == "randomized_shuffle",
    "grid_shuffle": lambda r: r.family == "grid_shuffle",
    "within_grid_shuffle": lambda r: r.family == "within_grid_shuffle",
    "local_grid_shuffle": lambda r: r.family == "local_grid_shuffle",
    "color_flatten": lambda r: r.family == "color_flatten",
    "grid16": lambda r: r.block_size == 16
    and r.family in ("grid_shuffle", "within_grid_shuffle", "local_grid_shuffle"),
}


@dataclass(frozen=True)
class DesignMatrix:
    data: np.ndarray  # (n, k) float64
    columns: tuple[str, ...]

    def __post_init__(self):
        n, k = self.data.shape
        if n <= k:
            raise DesignError(f"need more observations than regressors: n={n}, k={k}")
        dead = [name for j, name in enumerate(self.columns) if not self.data[:, j].any()]
        if dead:
            raise DesignError(f"all-zero design columns: {dead}")


def build_design(table: CorrectnessTable, family: str | None = None):
    """Build (y, DesignMatrix) for one report family (None or "all" = everything)."""
    selector = FAMILY_FILTERS[family or "all"]
    picked = [r for r in table.rows if selector(r)]
    if not picked:
        raise DesignError(f"no rows match family {family!r}")

    ordered = []
    for agent in AGENTS:
        ordered.extend(sorted((r for r in picked if r.agent == agent), key=lambda r: r.trial_id))

    n = len(ordered)
    y = np.array([1.0 if r.correct else 0.0 for r in ordered])
    X = np.zeros((n, len(AGENTS)))
    X[:, 0] = 1.0
    for i, row in enumerate(ordered):
        j = AGENTS.index(row.agent)
        if j > 0:
            X[i, j] = 1.0
    columns = tuple(AGENT_DISPLAY[a] for a in AGENTS)
    return y, DesignMatrix(data=X, columns=columns)
