"""The canonical transform grid used across the study.

18 configurations: randomized shuffle at two probabilities; grid shuffle at
three block sizes (block positions always fully permuted); within-grid and
local-grid shuffle at three block sizes times two probabilities; and colour
flatten.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..transforms.spec import TransformKind, TransformSpec

BLOCK_SIZES = (4, 8, 16)
PROBABILITIES = (0.5, 1.0)
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TransformManifest:
    entries: tuple[TransformSpec, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "entries": [spec.to_dict() for spec in self.entries],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "TransformManifest":
        doc = json.loads(text)
        return cls(entries=tuple(TransformSpec.from_dict(d) for d in doc["entries"]))


def build_manifest() -> TransformManifest:
    """The canonical 18 configurations, in a fixed enumeration order."""
    entries = []
    for p in PROBABILITIES:
        entries.append(TransformSpec(TransformKind.RANDOMIZED_SHUFFLE, probability=p))
    for b in BLOCK_SIZES:
        entries.append(
            TransformSpec(TransformKind.GRID_SHUFFLE, block_size=b, probability=1.0)
        )
    for b in BLOCK_SIZES:
        for p in PROBABILITIES:
            entries.append(
                TransformSpec(TransformKind.WITHIN_GRID_SHUFFLE, block_size=b, probability=p)
            )
    for b in BLOCK_SIZES:
        for p in PROBABILITIES:
            entries.append(
                TransformSpec(TransformKind.LOCAL_GRID_SHUFFLE, block_size=b, probability=p)
            )
    entries.append(TransformSpec(TransformKind.COLOR_FLATTEN))
    return TransformManifest(entries=tuple(entries))
