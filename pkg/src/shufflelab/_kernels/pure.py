"""Pure-Python kernel backend.

These are the hot inner routines of the library: the deterministic random
stream, the select-and-shuffle pass behind every probabilistic transform,
and bilinear resampling.  The compiled backend (``_fast.pyx``) mirrors this
module operation for operation; bit-identical output across the two is a
tested guarantee, so every golden value in the suite holds on either.

Random stream
-------------
PCG32 (the XSH-RR output permutation over a 64-bit LCG).  The stream
selector is a fixed package constant (sequence 54), so a 64-bit seed alone
pins the entire sequence on every platform.  Seeding follows the reference
initialisation: start from state 0, advance once, add the seed, advance
again.  Bounded draws use threshold rejection, never a bare modulo, so
every value in ``[0, n)`` is exactly equally likely.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

_MULT = 6364136223846793005
_MASK64 = (1 << 64) - 1
_SEQUENCE = 54
_INC = (_SEQUENCE << 1) | 1


def pcg32_init(seed: int) -> int:
    """State after seeding with ``seed`` on the fixed stream."""
    state = _INC  # one step from state 0
    state = (state + (seed & _MASK64)) & _MASK64
    return (state * _MULT + _INC) & _MASK64


def pcg32_next(state: int) -> tuple[int, int]:
    """One 32-bit draw: returns ``(value, advanced_state)``."""
    xorshifted = (((state >> 18) ^ state) >> 27) & 0xFFFFFFFF
    rot = state >> 59
    value = ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF
    return value, (state * _MULT + _INC) & _MASK64


def pcg32_fill(state: int, count: int) -> tuple[np.ndarray, int]:
    """``count`` consecutive 32-bit draws as a uint32 array."""
    out = np.empty(count, dtype=np.uint32)
    s = state
    for i in range(count):
        xorshifted = (((s >> 18) ^ s) >> 27) & 0xFFFFFFFF
        rot = s >> 59
        out[i] = ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF
        s = (s * _MULT + _INC) & _MASK64
    return out, s


def pcg32_below(state: int, bound: int) -> tuple[int, int]:
    """Uniform draw in ``[0, bound)`` by threshold rejection."""
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    threshold = (1 << 32) % bound
    while True:
        value, state = pcg32_next(state)
        if value >= threshold:
            return value % bound, state


def subset_permutation(state: int, n: int, p: float) -> tuple[np.ndarray, int]:
    """Source indices for a Bernoulli(p)-selected uniform shuffle.

    Pass 1 walks positions ``0..n-1`` in scan order, consuming exactly one
    32-bit draw each; position ``i`` is selected iff the draw falls below
    ``round(p * 2**32)``.  Pass 2 runs Fisher-Yates (high index down) over
    the selected positions' contents, one bounded draw per step; fixed
    points are allowed.  Returns ``src`` with ``out[i] = in[src[i]]``;
    unselected positions map to themselves.
    """
    threshold = int(p * 4294967296.0 + 0.5)
    mult, inc, mask = _MULT, _INC, _MASK64
    s = state
    selected = []
    append = selected.append
    for i in range(n):
        xorshifted = (((s >> 18) ^ s) >> 27) & 0xFFFFFFFF
        rot = s >> 59
        value = ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF
        s = (s * mult + inc) & mask
        if value < threshold:
            append(i)

    contents = list(selected)
    for i in range(len(contents) - 1, 0, -1):
        j, s = pcg32_below(s, i + 1)
        contents[i], contents[j] = contents[j], contents[i]

    src = np.arange(n, dtype=np.int64)
    if selected:
        src[np.asarray(selected, dtype=np.int64)] = np.asarray(contents, dtype=np.int64)
    return src, s


def resize_bilinear(img: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resample with half-pixel-centre coordinates.

    Source coordinate for output index ``i`` is ``(i + 0.5) * in/out - 0.5``
    clamped to the valid range; channels are interpolated independently and
    results rounded to nearest with ties away from zero.  The arithmetic
    expression tree matches the compiled kernel exactly so both backends
    produce identical bytes.
    """
    in_h, in_w = img.shape[0], img.shape[1]
    sy = np.clip((np.arange(out_h, dtype=np.float64) + 0.5) * (in_h / out_h) - 0.5, 0.0, in_h - 1.0)
    sx = np.clip((np.arange(out_w, dtype=np.float64) + 0.5) * (in_w / out_w) - 0.5, 0.0, in_w - 1.0)
    y0 = np.floor(sy).astype(np.int64)
    x0 = np.floor(sx).astype(np.int64)
    fy = sy - y0
    fx = sx - x0
    y1 = np.minimum(y0 + 1, in_h - 1)
    x1 = np.minimum(x0 + 1, in_w - 1)

    pix = img.astype(np.float64)
    v00 = pix[y0[:, None], x0[None, :]]
    v01 = pix[y0[:, None], x1[None, :]]
    v10 = pix[y1[:, None], x0[None, :]]
    v11 = pix[y1[:, None], x1[None, :]]
    fyc = fy[:, None, None]
    fxc = fx[None, :, None]
    # Same nesting as the compiled loop: rows blended last.
    value = (1.0 - fyc) * ((1.0 - fxc) * v00 + fxc * v01) + fyc * ((1.0 - fxc) * v10 + fxc * v11)
    return np.floor(value + 0.5).astype(np.uint8)
