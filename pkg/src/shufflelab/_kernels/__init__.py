"""Kernel backend selection.

The compiled Cython core is preferred when its extension module built; the
pure-Python twin is the fallback and the reference.  ``SHUFFLELAB_BACKEND``
forces a choice: ``compiled`` (error if unavailable), ``pure``, or ``auto``
(the default).  Both backends produce bit-identical output.
"""

from __future__ import annotations

import os

from . import pure

_requested = os.environ.get("SHUFFLELAB_BACKEND", "auto")
if _requested not in ("auto", "compiled", "pure"):
    raise ImportError(
        f"SHUFFLELAB_BACKEND must be auto, compiled or pure, got {_requested!r}"
    )

_impl = None
if _requested in ("auto", "compiled"):
    try:
        from . import _fast as _impl
    except ImportError:
        if _requested == "compiled":
            raise
if _impl is None:
    _impl = pure

BACKEND = _impl.BACKEND
pcg32_init = _impl.pcg32_init
pcg32_next = _impl.pcg32_next
pcg32_fill = _impl.pcg32_fill
pcg32_below = _impl.pcg32_below
subset_permutation = _impl.subset_permutation
resize_bilinear = _impl.resize_bilinear


def available_backends():
    """Names of the importable backends (pure is always present)."""
    names = ["pure"]
    try:
        from . import _fast  # noqa: F401
        names.insert(0, "compiled")
    except ImportError:
        pass
    return names
