"""Display scaling for stimuli."""

from __future__ import annotations

import numpy as np

from .. import _kernels
from .image import ImageError, check_image


def scale_linear(img: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Bilinear resample to ``out_w`` x ``out_h``.

    Half-pixel-centre convention: the source coordinate of output index
    ``i`` is ``(i + 0.5) * in/out - 0.5`` clamped to the valid range.  Each
    channel is interpolated independently; samples round to nearest integer
    with ties away from zero, which keeps output bytes identical across
    platforms and kernel backends.
    """
    if out_w < 1 or out_h < 1:
        raise ImageError(f"output size must be at least 1x1, got {out_w}x{out_h}")
    src = check_image(img)
    out = _kernels.resize_bilinear(src, out_h, out_w)
    return out if np.asarray(img).ndim == 3 else out[:, :, 0]
