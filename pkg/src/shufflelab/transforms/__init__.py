"""Deterministic image-shuffling transforms."""

from .ops import (
    DimensionError,
    FlattenedImage,
    apply,
    color_flatten,
    grid_shuffle,
    local_grid_shuffle,
    randomized_shuffle,
    unflatten,
    within_grid_shuffle,
)
from .rng import Prng
from .spec import GRID_KINDS, PROBABILISTIC_KINDS, SpecError, TransformKind, TransformSpec

__all__ = [
    "DimensionError",
    "FlattenedImage",
    "GRID_KINDS",
    "PROBABILISTIC_KINDS",
    "Prng",
    "SpecError",
    "TransformKind",
    "TransformSpec",
    "apply",
    "color_flatten",
    "grid_shuffle",
    "local_grid_shuffle",
    "randomized_shuffle",
    "unflatten",
    "within_grid_shuffle",
]
