"""Image file IO: PPM (P6, maxval 255) and PNG (8-bit grey/RGB).

Round-trips are lossless: write-then-read returns identical shape and
bytes.  PPM is hand-rolled (the format is a header plus raw samples);
PNG encoding/decoding is delegated to Pillow, restricted to the modes the
rest of the library produces.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image as PilImage

from .image import ImageError, check_image

FORMATS = ("png", "ppm")


def write_ppm(img: np.ndarray) -> bytes:
    img = check_image(img)
    if img.shape[2] != 3:
        raise ImageError("PPM P6 stores RGB; got a single-channel image")
    header = f"P6\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    return header + img.tobytes()


def _read_ppm_token(buf: io.BytesIO) -> bytes:
    # Tokens are separated by whitespace; '#' starts a comment to end of line.
    token = b""
    while True:
        ch = buf.read(1)
        if ch == b"":
            if token:
                return token
            raise ImageError("truncated PPM header")
        if ch == b"#":
            while ch not in (b"", b"\n"):
                ch = buf.read(1)
            continue
        if ch.isspace():
            if token:
                return token
            continue
        token += ch


def read_ppm(data: bytes) -> np.ndarray:
    buf = io.BytesIO(data)
    magic = _read_ppm_token(buf)
    if magic != b"P6":
        raise ImageError(f"unsupported PPM magic {magic!r} (only P6)")
    try:
        width = int(_read_ppm_token(buf))
        height = int(_read_ppm_token(buf))
        maxval = int(_read_ppm_token(buf))
    except ValueError as exc:
        raise ImageError(f"malformed PPM header: {exc}") from None
    if maxval != 255:
        raise ImageError(f"unsupported PPM maxval {maxval} (8-bit only)")
    raw = buf.read()
    expected = width * height * 3
    if len(raw) < expected:
        raise ImageError(f"PPM pixel data truncated: {len(raw)} < {expected}")
    pixels = np.frombuffer(raw[:expected], dtype=np.uint8).reshape(height, width, 3)
    return np.ascontiguousarray(pixels)


def write_png(img: np.ndarray) -> bytes:
    img = check_image(img)
    mode = "RGB" if img.shape[2] == 3 else "L"
    pil = PilImage.fromarray(img[:, :, 0] if mode == "L" else img, mode=mode)
    buf = io.BytesIO()
    pil.save(buf, format="PNG")
    return buf.getvalue()


def read_png(data: bytes) -> np.ndarray:
    try:
        pil = PilImage.open(io.BytesIO(data))
        pil.load()
    except Exception as exc:
        raise ImageError(f"malformed PNG: {exc}") from None
    if pil.mode not in ("RGB", "L"):
        raise ImageError(f"unsupported PNG mode {pil.mode} (8-bit RGB/grey only)")
    arr = np.asarray(pil, dtype=np.uint8)
    return check_image(arr)


def _check_format(fmt: str | None) -> str:
    fmt = (fmt or "").lower()
    if fmt not in FORMATS:
        raise ImageError(f"unsupported image format {fmt!r} (png or ppm)")
    return fmt


def read_image(src, fmt: str | None = None) -> np.ndarray:
    """Read from a path (format from extension unless given) or bytes."""
    if isinstance(src, (bytes, bytearray)):
        data = bytes(src)
        if fmt is None:
            raise ImageError("format required when reading from bytes")
    else:
        data = Path(src).read_bytes()
        fmt = fmt or Path(src).suffix.lstrip(".")
    fmt = _check_format(fmt)
    return read_ppm(data) if fmt == "ppm" else read_png(data)


def write_image(dst, img: np.ndarray, fmt: str | None = None) -> bytes:
    """Write to a path (format from extension unless given); returns bytes."""
    if dst is not None and fmt is None:
        fmt = Path(dst).suffix.lstrip(".")
    fmt = _check_format(fmt)
    payload = write_ppm(img) if fmt == "ppm" else write_png(img)
    if dst is not None:
        Path(dst).write_bytes(payload)
    return payload
