"""The five shuffling transforms.

All shuffles move whole pixels: an RGB triple travels as one unit.  Every
probabilistic transform is built on one primitive, the Bernoulli
select-and-shuffle pass (:meth:`Prng.subset_permutation`), applied to pixel
positions, block positions, or per-block pixel positions.  Each transform
consumes a single random stream in a fixed canonical order (selection pass
first, then the Fisher-Yates pass; blocks in row-major order), so outputs
are a pure function of (image, parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..imagecore.image import ImageError, check_image
from .rng import Prng
from .spec import TransformKind, TransformSpec

__all__ = [
    "DimensionError",
    "FlattenedImage",
    "apply",
    "color_flatten",
    "grid_shuffle",
    "local_grid_shuffle",
    "randomized_shuffle",
    "unflatten",
    "within_grid_shuffle",
]


class DimensionError(ImageError):
    """Image dimensions incompatible with the requested block size."""


@dataclass(frozen=True)
class FlattenedImage:
    """Channel-separated 1-D views of a square RGB image.

    ``channels[c][r * width + k]`` is the channel-``c`` sample of pixel
    ``(r, k)``: row-major order, one vector of length ``width * height``
    per channel.
    """

    width: int
    height: int
    channels: tuple[np.ndarray, np.ndarray, np.ndarray]

    def __post_init__(self):
        for c, vec in enumerate(self.channels):
            if vec.shape != (self.width * self.height,):
                raise DimensionError(
                    f"channel {c} has {vec.shape[0]} samples, "
                    f"expected {self.width * self.height}"
                )


def _check_blocks(img: np.ndarray, block_size: int) -> tuple[int, int]:
    h, w = img.shape[0], img.shape[1]
    if block_size < 1 or h % block_size or w % block_size:
        raise DimensionError(
            f"block size {block_size} does not divide image size {w}x{h}"
        )
    return h // block_size, w // block_size


def randomized_shuffle(img: np.ndarray, p: float, rng: Prng) -> np.ndarray:
    """Shuffle pixel positions across the whole image with probability p."""
    img = check_image(img)
    h, w, c = img.shape
    src = rng.subset_permutation(h * w, p)
    return img.reshape(h * w, c)[src].reshape(h, w, c)


def grid_shuffle(img: np.ndarray, block_size: int, p: float, rng: Prng) -> np.ndarray:
    """Partition into square blocks and shuffle block positions."""
    img = check_image(img)
    by, bx = _check_blocks(img, block_size)
    h, w, c = img.shape
    b = block_size
    src = rng.subset_permutation(by * bx, p)
    blocks = img.reshape(by, b, bx, b, c).transpose(0, 2, 1, 3, 4)
    shuffled = blocks.reshape(by * bx, b, b, c)[src].reshape(by, bx, b, b, c)
    return np.ascontiguousarray(shuffled.transpose(0, 2, 1, 3, 4).reshape(h, w, c))


def within_grid_shuffle(img: np.ndarray, block_size: int, p: float, rng: Prng) -> np.ndarray:
    """Shuffle pixel positions inside each block; block positions fixed.

    Blocks are visited in row-major order, each running its own selection
    and shuffle pass on the one shared stream, so a pixel never crosses a
    block boundary.
    """
    img = check_image(img)
    by, bx = _check_blocks(img, block_size)
    c = img.shape[2]
    b = block_size
    out = img.copy()
    for i in range(by):
        for j in range(bx):
            src = rng.subset_permutation(b * b, p)
            block = out[i * b:(i + 1) * b, j * b:(j + 1) * b]
            out[i * b:(i + 1) * b, j * b:(j + 1) * b] = (
                block.reshape(b * b, c)[src].reshape(b, b, c)
            )
    return out


def local_grid_shuffle(img: np.ndarray, block_size: int, p: float, rng: Prng) -> np.ndarray:
    """Within-block pixel shuffle followed by a full block-position shuffle.

    The pixel stage uses ``p``; the block stage is an unconditional (p=1)
    permutation.  Both stages draw from the same stream, in that order.
    """
    staged = within_grid_shuffle(img, block_size, p, rng)
    return grid_shuffle(staged, block_size, 1.0, rng)


def color_flatten(img: np.ndarray) -> FlattenedImage:
    """Separate RGB channels into three row-major 1-D vectors."""
    img = check_image(img)
    h, w, c = img.shape
    if c != 3:
        raise DimensionError(f"colour flatten needs 3 channels, got {c}")
    if h != w:
        raise DimensionError(f"colour flatten needs a square image, got {w}x{h}")
    return FlattenedImage(
        width=w,
        height=h,
        channels=tuple(img[:, :, ch].reshape(-1).copy() for ch in range(3)),
    )


def unflatten(flat: FlattenedImage) -> np.ndarray:
    """Exact inverse of :func:`color_flatten`."""
    h, w = flat.height, flat.width
    out = np.empty((h, w, 3), dtype=np.uint8)
    for ch, vec in enumerate(flat.channels):
        out[:, :, ch] = np.asarray(vec, dtype=np.uint8).reshape(h, w)
    return out


def apply(spec: TransformSpec, img: np.ndarray):
    """Dispatch a TransformSpec; a fresh stream is seeded from spec.seed.

    Returns an image for every kind except colour flatten, which returns a
    :class:`FlattenedImage`.
    """
    rng = Prng(spec.seed)
    kind = spec.kind
    if kind is TransformKind.BASELINE:
        return check_image(img).copy()
    if kind is TransformKind.RANDOMIZED_SHUFFLE:
        return randomized_shuffle(img, spec.probability, rng)
    if kind is TransformKind.GRID_SHUFFLE:
        return grid_shuffle(img, spec.block_size, spec.probability, rng)
    if kind is TransformKind.WITHIN_GRID_SHUFFLE:
        return within_grid_shuffle(img, spec.block_size, spec.probability, rng)
    if kind is TransformKind.LOCAL_GRID_SHUFFLE:
        return local_grid_shuffle(img, spec.block_size, spec.probability, rng)
    if kind is TransformKind.COLOR_FLATTEN:
        return color_flatten(img)
    raise ValueError(f"unhandled transform kind {kind!r}")
