"""Residual diagnostics."""

from __future__ import annotations

import numpy as np
from scipy import stats as spstats


class DegenerateResidualsError(ValueError):
    """Diagnostic undefined because the residuals have zero variance."""


def durbin_watson(residuals) -> float:
    """Sum of squared successive differences over the residual sum of squares."""
    r = np.asarray(residuals, dtype=float)
    denom = float(r @ r)
    if denom == 0.0:
        raise DegenerateResidualsError("Durbin-Watson undefined for all-zero residuals")
    diff = np.diff(r)
    return float(diff @ diff) / denom


def jarque_bera(residuals) -> tuple[float, float, float, float]:
    """Returns (statistic, p value, skew, kurtosis).

    Moments are population moments about the mean; kurtosis is the raw
    fourth standardised moment (3 for a normal sample), not excess.
    """
    r = np.asarray(residuals, dtype=float)
    n = r.size
    if n < 2:
        raise DegenerateResidualsError("Jarque-Bera needs at least 2 residuals")
    centered = r - r.mean()
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        raise DegenerateResidualsError("Jarque-Bera undefined for constant residuals")
    skew = float(np.mean(centered**3)) / m2**1.5
    kurtosis = float(np.mean(centered**4)) / m2**2
    jb = n / 6.0 * (skew**2 + (kurtosis - 3.0) ** 2 / 4.0)
    p = float(spstats.chi2.sf(jb, 2))
    return jb, p, skew, kurtosis
