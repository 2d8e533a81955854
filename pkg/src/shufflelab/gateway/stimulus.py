"""Stimulus rendering for human display.

The source image is scaled to the display resolution first and the
transform applied afterwards.  Block sizes are expressed in source-pixel
units throughout the schedule; at display time they are multiplied by the
integer display factor so the block count of the stimulus matches the
machine condition (a 16-pixel block on a 32-pixel image stays "4 blocks"
at 128x128).  Colour flatten is visualised as the three channel planes
stacked vertically (3N x N, greyscale).
"""

from __future__ import annotations

import base64

import numpy as np

from ..imagecore.image import Dataset, ImageError
from ..imagecore.io import write_png
from ..imagecore.resize import scale_linear
from ..transforms import FlattenedImage, TransformKind, TransformSpec, apply
from ..experiment.schedule import Trial

DISPLAY_SIZE = 128


def display_spec(spec: TransformSpec, factor: int) -> TransformSpec:
    """The spec as applied at display resolution (blocks scaled by factor)."""
    if spec.block_size is None or factor == 1:
        return spec
    return TransformSpec(spec.kind, spec.block_size * factor, spec.probability, spec.seed)


def flatten_visualization(flat: FlattenedImage) -> np.ndarray:
    """Channel planes stacked vertically as one greyscale image."""
    planes = [vec.reshape(flat.height, flat.width) for vec in flat.channels]
    return np.vstack(planes)


def render_stimulus(trial: Trial, dataset: Dataset, display_size: int = DISPLAY_SIZE) -> np.ndarray:
    """Deterministic pixels shown for a trial; reproducible from the schedule."""
    record = dataset.records[trial.image_index]
    height, width = record.image.shape[0], record.image.shape[1]
    scaled = scale_linear(record.image, display_size, display_size)
    if trial.spec.kind is TransformKind.BASELINE:
        return scaled
    spec = trial.spec
    if spec.block_size is not None:
        if display_size % width != 0:
            raise ImageError(
                f"display size {display_size} is not a multiple of source width {width}"
            )
        spec = display_spec(spec, display_size // width)
    out = apply(spec.with_seed(trial.display_seed), scaled)
    if isinstance(out, FlattenedImage):
        return flatten_visualization(out)
    return out


def stimulus_png_base64(trial: Trial, dataset: Dataset, display_size: int = DISPLAY_SIZE) -> str:
    return base64.b64encode(write_png(render_stimulus(trial, dataset, display_size))).decode("ascii")
