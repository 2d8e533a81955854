"""Least-squares engine and residual diagnostics."""

from .accuracy import AccuracyCell, accuracy_csv, accuracy_table
from .design import (
    AGENT_DISPLAY,
    AGENTS,
    FAMILY_FILTERS,
    CorrectnessRow,
    CorrectnessTable,
    DesignError,
    DesignMatrix,
    build_design,
)
from .diagnostics import DegenerateResidualsError, durbin_watson, jarque_bera
from .ols import OlsReport, SingularDesignError, fit_ols
from .report import format_report

__all__ = [
    "AGENTS",
    "AGENT_DISPLAY",
    "AccuracyCell",
    "CorrectnessRow",
    "CorrectnessTable",
    "DegenerateResidualsError",
    "DesignError",
    "DesignMatrix",
    "FAMILY_FILTERS",
    "OlsReport",
    "SingularDesignError",
    "accuracy_csv",
    "accuracy_table",
    "build_design",
    "durbin_watson",
    "fit_ols",
    "format_report",
    "jarque_bera",
]
