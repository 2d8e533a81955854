"""Per-configuration accuracy summaries."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .design import AGENTS, CorrectnessTable


@dataclass(frozen=True)
class AccuracyCell:
    family: str
    probability: float | None
    block_size: int | None
    agent: str
    accuracy_pct: float
    n_trials: int


def accuracy_table(table: CorrectnessTable) -> list[AccuracyCell]:
    """Mean correctness x100 per (family, probability, block, agent).

    Groups with no rows are simply absent.  Cells are ordered by
    configuration then by the canonical agent order.
    """
    groups: dict[tuple, list[bool]] = {}
    for row in table.rows:
        key = (row.family, row.probability, row.block_size, row.agent)
        groups.setdefault(key, []).append(row.correct)

    config_order: list[tuple] = []
    for row in table.rows:
        config = (row.family, row.probability, row.block_size)
        if config not in config_order:
            config_order.append(config)

    cells = []
    for config in config_order:
        for agent in AGENTS:
            key = (*config, agent)
            if key not in groups:
                continue
            outcomes = groups[key]
            cells.append(
                AccuracyCell(
                    family=config[0],
                    probability=config[1],
                    block_size=config[2],
                    agent=agent,
                    accuracy_pct=100.0 * sum(outcomes) / len(outcomes),
                    n_trials=len(outcomes),
                )
            )
    return cells


def accuracy_csv(cells: list[AccuracyCell]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["transform", "probability", "block_size", "agent", "accuracy_pct", "n_trials"])
    for cell in cells:
        writer.writerow(
            [
                cell.family,
                "" if cell.probability is None else f"{cell.probability:g}",
                "" if cell.block_size is None else cell.block_size,
                cell.agent,
                f"{cell.accuracy_pct:.2f}",
                cell.n_trials,
            ]
        )
    return buf.getvalue()
