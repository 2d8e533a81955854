"""CLI and HTTP service around the library."""

from .service import INSTRUCTIONS_TEXT, create_app
from .stimulus import (
    DISPLAY_SIZE,
    display_spec,
    flatten_visualization,
    render_stimulus,
    stimulus_png_base64,
)
from .store import ServiceConfig, SessionStore, StoreError, UnknownSessionError

__all__ = [
    "DISPLAY_SIZE",
    "INSTRUCTIONS_TEXT",
    "ServiceConfig",
    "SessionStore",
    "StoreError",
    "UnknownSessionError",
    "create_app",
    "display_spec",
    "flatten_visualization",
    "render_stimulus",
    "stimulus_png_base64",
]
