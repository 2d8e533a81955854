"""CIFAR-100 binary split files.

Record layout: 1 coarse-label byte, 1 fine-label byte, then 3,072 pixel
bytes stored planar (1,024 red, 1,024 green, 1,024 blue, each row-major
32x32).  Pixels are converted once at load to the interleaved layout used
everywhere else; :func:`dump_cifar100_binary` is the exact inverse.
"""

from __future__ import annotations

import io

import numpy as np

from .image import Dataset, ImageError, LabeledImage

SIDE = 32
PIXEL_BYTES = SIDE * SIDE * 3
RECORD_BYTES = 2 + PIXEL_BYTES

# Class name tables for the published dataset (both alphabetical).
FINE_LABEL_NAMES = (
    "apple", "aquarium_fish", "baby", "bear", "beaver", "bed", "bee", "beetle",
    "bicycle", "bottle", "bowl", "boy", "bridge", "bus", "butterfly", "camel",
    "can", "castle", "caterpillar", "cattle", "chair", "chimpanzee", "clock",
    "cloud", "cockroach", "couch", "crab", "crocodile", "cup", "dinosaur",
    "dolphin", "elephant", "flatfish", "forest", "fox", "girl", "hamster",
    "house", "kangaroo", "keyboard", "lamp", "lawn_mower", "leopard", "lion",
    "lizard", "lobster", "man", "maple_tree", "motorcycle", "mountain", "mouse",
    "mushroom", "oak_tree", "orange", "orchid", "otter", "palm_tree", "pear",
    "pickup_truck", "pine_tree", "plain", "plate", "poppy", "porcupine",
    "possum", "rabbit", "raccoon", "ray", "road", "rocket", "rose", "sea",
    "seal", "shark", "shrew", "skunk", "skyscraper", "snail", "snake", "spider",
    "squirrel", "streetcar", "sunflower", "sweet_pepper", "table", "tank",
    "telephone", "television", "tiger", "tractor", "train", "trout", "tulip",
    "turtle", "wardrobe", "whale", "willow_tree", "wolf", "woman", "worm",
)
COARSE_LABEL_NAMES = (
    "aquatic_mammals", "fish", "flowers", "food_containers",
    "fruit_and_vegetables", "household_electrical_devices",
    "household_furniture", "insects", "large_carnivores",
    "large_man-made_outdoor_things", "large_natural_outdoor_scenes",
    "large_omnivores_and_herbivores", "medium_mammals",
    "non-insect_invertebrates", "people", "reptiles", "small_mammals",
    "trees", "vehicles_1", "vehicles_2",
)


class MalformedCifarError(ImageError):
    """Binary stream violates the record layout."""

    def __init__(self, message: str, record_index: int | None = None):
        if record_index is not None:
            message = f"record {record_index}: {message}"
        super().__init__(message)
        self.record_index = record_index


def load_cifar100_binary(data, split: str) -> Dataset:
    """Parse a split file (bytes or binary file object) into a Dataset."""
    if hasattr(data, "read"):
        data = data.read()
    data = bytes(data)
    if len(data) % RECORD_BYTES != 0:
        raise MalformedCifarError(
            f"stream length {len(data)} is not a multiple of {RECORD_BYTES}"
        )
    records = []
    for idx in range(len(data) // RECORD_BYTES):
        rec = data[idx * RECORD_BYTES:(idx + 1) * RECORD_BYTES]
        coarse, fine = rec[0], rec[1]
        if fine >= 100:
            raise MalformedCifarError(f"fine label {fine} out of range", idx)
        if coarse >= 20:
            raise MalformedCifarError(f"coarse label {coarse} out of range", idx)
        planar = np.frombuffer(rec, dtype=np.uint8, offset=2)
        image = np.ascontiguousarray(planar.reshape(3, SIDE, SIDE).transpose(1, 2, 0))
        records.append(LabeledImage(image=image, fine_label=fine, coarse_label=coarse))
    return Dataset(
        split=split,
        records=records,
        fine_names=FINE_LABEL_NAMES,
        coarse_names=COARSE_LABEL_NAMES,
    )


def dump_cifar100_binary(dataset: Dataset) -> bytes:
    """Serialise back to the binary record layout (inverse of load)."""
    out = io.BytesIO()
    for idx, rec in enumerate(dataset.records):
        if rec.image.shape != (SIDE, SIDE, 3):
            raise MalformedCifarError(
                f"image shape {rec.image.shape} is not ({SIDE}, {SIDE}, 3)", idx
            )
        out.write(bytes([rec.coarse_label, rec.fine_label]))
        out.write(rec.image.transpose(2, 0, 1).tobytes())
    return out.getvalue()
