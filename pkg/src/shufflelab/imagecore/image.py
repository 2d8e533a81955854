"""Pixel containers.

An image is a C-contiguous ``numpy`` array of unsigned 8-bit samples with
shape ``(height, width, channels)``, channels interleaved per pixel
(R, G, B for colour).  Greyscale images (1 channel) are accepted everywhere
colour ones are; 2-D arrays are promoted to a single channel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ImageError(ValueError):
    """Malformed pixel buffer or image file."""


def check_image(img: np.ndarray) -> np.ndarray:
    """Validate and canonicalise an image array.

    Returns a C-contiguous uint8 ``(H, W, C)`` view/copy with C in {1, 3};
    raises :class:`ImageError` otherwise.
    """
    arr = np.asarray(img)
    if arr.dtype != np.uint8:
        raise ImageError(f"images are unsigned 8-bit, got dtype {arr.dtype}")
    if arr.ndim == 2:
        arr = arr[:, :, np.newaxis]
    if arr.ndim != 3:
        raise ImageError(f"images are HxWxC, got {arr.ndim} dimensions")
    if arr.shape[2] not in (1, 3):
        raise ImageError(f"images have 1 or 3 channels, got {arr.shape[2]}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ImageError(f"images are at least 1x1, got shape {arr.shape[:2]}")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True)
class LabeledImage:
    """One dataset record: pixels plus its fine and coarse class ids."""

    image: np.ndarray
    fine_label: int
    coarse_label: int

    def __post_init__(self):
        if not 0 <= self.fine_label < 100:
            raise ImageError(f"fine label out of range: {self.fine_label}")
        if not 0 <= self.coarse_label < 20:
            raise ImageError(f"coarse label out of range: {self.coarse_label}")


@dataclass
class Dataset:
    """An ordered split of labelled images plus the class name tables."""

    split: str
    records: list[LabeledImage] = field(default_factory=list)
    fine_names: tuple[str, ...] = ()
    coarse_names: tuple[str, ...] = ()

    CANONICAL_SIZES = {"train": 50_000, "test": 10_000}

    def __len__(self) -> int:
        return len(self.records)

    @property
    def is_canonical(self) -> bool:
        """Whether the record count matches the published split size."""
        return len(self.records) == self.CANONICAL_SIZES.get(self.split)
