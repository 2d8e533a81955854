"""Ordinary least squares with the full summary-statistics panel.

The solve goes through a QR factorisation (never the normal equations);
rank is checked against the singular values with a relative tolerance of
1e-10.  Reported quantities:

* coefficient table: estimate, standard error, t, two-sided p, 95% CI;
* fit: R-squared against the mean, adjusted R-squared, overall F and its
  p value, Gaussian log-likelihood at the MLE variance (SSR/n), AIC, BIC;
* residual diagnostics: Durbin-Watson, Jarque-Bera with p, skew, raw
  kurtosis; design condition number (ratio of extreme singular values).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as spstats

from .design import DesignMatrix
from .diagnostics import durbin_watson, jarque_bera

RANK_RTOL = 1e-10


class SingularDesignError(ValueError):
    """Design matrix is rank deficient."""

    def __init__(self, columns: list[str]):
        self.columns = columns
        super().__init__(f"design is rank deficient; dependent columns: {columns}")


@dataclass(frozen=True)
class OlsReport:
    columns: tuple[str, ...]
    coef: np.ndarray
    stderr: np.ndarray
    tvalues: np.ndarray
    pvalues: np.ndarray
    ci_low: np.ndarray
    ci_high: np.ndarray
    n: int
    df_model: int
    df_resid: int
    r_squared: float
    adj_r_squared: float
    f_stat: float
    f_pvalue: float
    log_likelihood: float
    aic: float
    bic: float
    durbin_watson: float
    jarque_bera: float
    jb_pvalue: float
    skew: float
    kurtosis: float
    condition_number: float
    residuals: np.ndarray

    def to_dict(self) -> dict:
        def num(value) -> float | None:
            value = float(value)
            return value if math.isfinite(value) else None  # keep JSON strict

        return {
            "n": self.n,
            "df_model": self.df_model,
            "df_resid": self.df_resid,
            "params": [
                {
                    "name": name,
                    "coef": num(self.coef[j]),
                    "stderr": num(self.stderr[j]),
                    "t": num(self.tvalues[j]),
                    "p": num(self.pvalues[j]),
                    "ci_low": num(self.ci_low[j]),
                    "ci_high": num(self.ci_high[j]),
                }
                for j, name in enumerate(self.columns)
            ],
            "r_squared": num(self.r_squared),
            "adj_r_squared": num(self.adj_r_squared),
            "f_stat": num(self.f_stat),
            "f_pvalue": num(self.f_pvalue),
            "log_likelihood": num(self.log_likelihood),
            "aic": num(self.aic),
            "bic": num(self.bic),
            "durbin_watson": num(self.durbin_watson),
            "jarque_bera": num(self.jarque_bera),
            "jb_pvalue": num(self.jb_pvalue),
            "skew": num(self.skew),
            "kurtosis": num(self.kurtosis),
            "condition_number": num(self.condition_number),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _dependent_columns(X: np.ndarray, columns, s, Vt, rank: int) -> list[str]:
    # Columns with weight in the null space are the dependent set.
    null_space = Vt[rank:]
    weight = np.abs(null_space).max(axis=0)
    flagged = [columns[j] for j in range(X.shape[1]) if weight[j] > 1e-8]
    return flagged or list(columns)


def fit_ols(y, X: DesignMatrix | np.ndarray, columns=None) -> OlsReport:
    """Fit y on X and produce the full report."""
    if isinstance(X, DesignMatrix):
        columns = X.columns
        X = X.data
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).reshape(-1)
    n, k = X.shape
    if y.shape[0] != n:
        raise ValueError(f"y has {y.shape[0]} rows, X has {n}")
    if columns is None:
        columns = tuple(f"x{j}" for j in range(k))

    s = np.linalg.svd(X, compute_uv=False)
    rank = int(np.sum(s > RANK_RTOL * s[0]))
    if rank < k:
        _, _, Vt = np.linalg.svd(X)
        raise SingularDesignError(_dependent_columns(X, columns, s, Vt, rank))
    condition_number = float(s[0] / s[-1])

    Q, R = np.linalg.qr(X)
    coef = np.linalg.solve(R, Q.T @ y)
    fitted = X @ coef
    resid = y - fitted
    ssr = float(resid @ resid)
    df_resid = n - k
    df_model = k - 1
    sigma2 = ssr / df_resid

    # (X'X)^-1 from R without forming X'X: R^-1 R^-T.
    Rinv = np.linalg.solve(R, np.eye(k))
    xtx_inv = Rinv @ Rinv.T
    stderr = np.sqrt(sigma2 * np.diag(xtx_inv))

    with np.errstate(divide="ignore", invalid="ignore"):
        tvalues = np.where(stderr > 0, coef / stderr, np.inf * np.sign(coef))
    pvalues = 2.0 * spstats.t.sf(np.abs(tvalues), df_resid)
    t_crit = float(spstats.t.ppf(0.975, df_resid))
    ci_low = coef - t_crit * stderr
    ci_high = coef + t_crit * stderr

    sst = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 - ssr / sst if sst > 0 else 1.0
    adj_r_squared = 1.0 - (1.0 - r_squared) * (n - 1) / df_resid
    if df_model > 0 and r_squared < 1.0:
        f_stat = (r_squared / df_model) / ((1.0 - r_squared) / df_resid)
        f_pvalue = float(spstats.f.sf(f_stat, df_model, df_resid))
    else:
        f_stat = math.inf if df_model > 0 else math.nan
        f_pvalue = 0.0 if df_model > 0 else math.nan

    # Gaussian log-likelihood at the MLE variance SSR/n.
    if ssr > 0:
        log_likelihood = -n / 2.0 * (math.log(2.0 * math.pi) + math.log(ssr / n) + 1.0)
    else:
        log_likelihood = math.inf
    aic = 2.0 * k - 2.0 * log_likelihood
    bic = k * math.log(n) - 2.0 * log_likelihood

    dw = durbin_watson(resid) if ssr > 0 else math.nan
    if ssr > 0:
        jb, jb_p, skew, kurtosis = jarque_bera(resid)
    else:
        jb = jb_p = skew = kurtosis = math.nan

    return OlsReport(
        columns=tuple(columns),
        coef=coef,
        stderr=stderr,
        tvalues=tvalues,
        pvalues=pvalues,
        ci_low=ci_low,
        ci_high=ci_high,
        n=n,
        df_model=df_model,
        df_resid=df_resid,
        r_squared=float(r_squared),
        adj_r_squared=float(adj_r_squared),
        f_stat=float(f_stat),
        f_pvalue=float(f_pvalue),
        log_likelihood=float(log_likelihood),
        aic=float(aic),
        bic=float(bic),
        durbin_watson=float(dw),
        jarque_bera=float(jb),
        jb_pvalue=float(jb_p),
        skew=float(skew),
        kurtosis=float(kurtosis),
        condition_number=condition_number,
        residuals=resid,
    )
