"""Fixed-width text rendering of an OLS report.

Layout follows the classic regression-summary format (header panel,
coefficient table, diagnostics footer) so results can be eyeballed against
published tables.
"""

from __future__ import annotations

from .ols import OlsReport

_WIDTH = 78


def _panel(pairs: list[tuple[str, str]]) -> list[str]:
    # Two label/value columns per line.
    lines = []
    half = (len(pairs) + 1) // 2
    left, right = pairs[:half], pairs[half:]
    for i in range(half):
        l_label, l_val = left[i]
        r_label, r_val = right[i] if i < len(right) else ("", "")
        lines.append(f"{l_label:<18}{l_val:>20}   {r_label:<18}{r_val:>19}")
    return lines


def format_report(report: OlsReport, title: str = "OLS Regression Results") -> str:
    head = _panel(
        [
            ("Dep. Variable:", "y"),
            ("Model:", "OLS"),
            ("Method:", "Least Squares"),
            ("No. Observations:", f"{report.n}"),
            ("Df Residuals:", f"{report.df_resid}"),
            ("Df Model:", f"{report.df_model}"),
            ("R-squared:", f"{report.r_squared:.3f}"),
            ("Adj. R-squared:", f"{report.adj_r_squared:.3f}"),
            ("F-statistic:", f"{report.f_stat:.4g}"),
            ("Prob (F-statistic):", f"{report.f_pvalue:.3g}"),
            ("Log-Likelihood:", f"{report.log_likelihood:.4g}"),
            ("AIC:", f"{report.aic:.4g}"),
            ("BIC:", f"{report.bic:.4g}"),
        ]
    )
    sep = "=" * _WIDTH
    thin = "-" * _WIDTH
    rows = [
        f"{'':<16}{'coef':>10}{'std err':>10}{'t':>10}{'P>|t|':>10}{'[0.025':>10}{'0.975]':>10}",
        thin,
    ]
    for j, name in enumerate(report.columns):
        rows.append(
            f"{name:<16}{report.coef[j]:>10.4f}{report.stderr[j]:>10.3f}"
            f"{report.tvalues[j]:>10.3f}{report.pvalues[j]:>10.3f}"
            f"{report.ci_low[j]:>10.3f}{report.ci_high[j]:>10.3f}"
        )
    foot = _panel(
        [
            ("Durbin-Watson:", f"{report.durbin_watson:.3f}"),
            ("Jarque-Bera (JB):", f"{report.jarque_bera:.3f}"),
            ("Prob(JB):", f"{report.jb_pvalue:.3g}"),
            ("Skew:", f"{report.skew:.3f}"),
            ("Kurtosis:", f"{report.kurtosis:.3f}"),
            ("Cond. No.", f"{report.condition_number:.3g}"),
        ]
    )
    parts = [title.center(_WIDTH), sep, *head, sep, *rows, sep, *foot, sep]
    return "\n".join(parts) + "\n"
