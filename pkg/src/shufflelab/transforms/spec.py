"""Transform configuration type and its wire format."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TransformKind(str, Enum):
    BASELINE = "baseline"
    GRID_SHUFFLE = "grid_shuffle"
    RANDOMIZED_SHUFFLE = "randomized_shuffle"
    WITHIN_GRID_SHUFFLE = "within_grid_shuffle"
    LOCAL_GRID_SHUFFLE = "local_grid_shuffle"
    COLOR_FLATTEN = "color_flatten"


# Kinds that partition the image into square blocks.
GRID_KINDS = frozenset(
    {
        TransformKind.GRID_SHUFFLE,
        TransformKind.WITHIN_GRID_SHUFFLE,
        TransformKind.LOCAL_GRID_SHUFFLE,
    }
)
# Kinds whose behaviour depends on a shuffle probability.
PROBABILISTIC_KINDS = GRID_KINDS | {TransformKind.RANDOMIZED_SHUFFLE}


class SpecError(ValueError):
    """Inconsistent transform configuration."""


@dataclass(frozen=True)
class TransformSpec:
    """One transform configuration: kind, block size, probability, seed."""

    kind: TransformKind
    block_size: int | None = None
    probability: float | None = None
    seed: int = 0

    def __post_init__(self):
        kind = TransformKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in GRID_KINDS:
            if self.block_size is None or self.block_size < 1:
                raise SpecError(f"{kind.value} requires a positive block size")
        elif self.block_size is not None:
            raise SpecError(f"{kind.value} takes no block size")
        if kind in PROBABILISTIC_KINDS:
            if self.probability is None or not 0.0 <= self.probability <= 1.0:
                raise SpecError(
                    f"{kind.value} requires a probability in [0, 1], got {self.probability}"
                )
        elif self.probability is not None:
            raise SpecError(f"{kind.value} takes no probability")
        if self.seed < 0:
            raise SpecError(f"seed must be unsigned, got {self.seed}")

    @property
    def tag(self) -> str:
        """Stable grouping key, independent of the seed."""
        parts = [self.kind.value]
        if self.block_size is not None:
            parts.append(f"b{self.block_size}")
        if self.probability is not None:
            parts.append(f"p{self.probability:g}")
        return ":".join(parts)

    def with_seed(self, seed: int) -> "TransformSpec":
        return TransformSpec(self.kind, self.block_size, self.probability, seed)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "block_size": self.block_size,
            "probability": self.probability,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TransformSpec":
        return cls(
            kind=TransformKind(d["kind"]),
            block_size=d.get("block_size"),
            probability=d.get("probability"),
            seed=d.get("seed", 0),
        )
