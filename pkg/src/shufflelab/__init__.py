"""shufflelab: deterministic image-shuffling transforms plus the harness for
comparing human and network object recognition on them.

Subpackages: ``imagecore`` (pixels, dataset and image file IO, display
scaling), ``transforms`` (the five shuffles under an explicit seed),
``experiment`` (manifest, trial schedules, session state machine),
``stats`` (least-squares engine and diagnostics), ``gateway`` (CLI and
HTTP service).
"""

from . import _kernels, experiment, gateway, imagecore, stats, transforms

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "_kernels",
    "experiment",
    "gateway",
    "imagecore",
    "stats",
    "transforms",
]
