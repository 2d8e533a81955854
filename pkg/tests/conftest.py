from __future__ import annotations

import numpy as np
import pytest

from shufflelab.imagecore import Dataset, LabeledImage
from shufflelab.imagecore.cifar import COARSE_LABEL_NAMES, FINE_LABEL_NAMES


def random_image(seed: int, side: int = 32, channels: int = 3) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, (side, side, channels), dtype=np.uint8)


def smooth_image(side: int = 32) -> np.ndarray:
    """Strongly spatially structured image (gradients), a natural-image stand-in."""
    y, x = np.mgrid[0:side, 0:side]
    r = (x * 255) // (side - 1)
    g = (y * 255) // (side - 1)
    b = ((x + y) * 255) // (2 * side - 2)
    return np.stack([r, g, b], axis=-1).astype(np.uint8)


def indexed_image(side: int = 32) -> np.ndarray:
    """Every pixel value encodes its own position (for tracking moves)."""
    idx = np.arange(side * side, dtype=np.int64)
    img = np.zeros((side * side, 3), dtype=np.uint8)
    img[:, 0] = idx >> 8
    img[:, 1] = idx & 0xFF
    return img.reshape(side, side, 3)


def make_dataset(n_records: int = 200, n_classes: int = 50, split: str = "test") -> Dataset:
    rng = np.random.default_rng(1234)
    records = []
    for i in range(n_records):
        fine = i % n_classes
        records.append(
            LabeledImage(
                image=rng.integers(0, 256, (32, 32, 3), dtype=np.uint8),
                fine_label=fine,
                coarse_label=fine % 20,
            )
        )
    return Dataset(
        split=split,
        records=records,
        fine_names=FINE_LABEL_NAMES,
        coarse_names=COARSE_LABEL_NAMES,
    )


def cifar_record_bytes(fine: int, coarse: int, image: np.ndarray) -> bytes:
    """Assemble one 3,074-byte record by hand (planar layout)."""
    assert image.shape == (32, 32, 3)
    return bytes([coarse, fine]) + image.transpose(2, 0, 1).tobytes()


@pytest.fixture(scope="session")
def dataset() -> Dataset:
    return make_dataset()


@pytest.fixture
def natural() -> np.ndarray:
    return smooth_image()
