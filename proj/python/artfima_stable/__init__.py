"""ARTFIMA(p,d,lambda,q) time series with symmetric alpha-stable innovations."""

try:  # installed layout: the extension lives inside this package
    from ._artfima import (
        codifference,
        fit_whittle,
        ljung_box,
        ma_coefficients,
        mcculloch_alpha,
        periodogram,
        residuals,
        run_cli,
        sample_sas,
        simulate,
        tempered_weights,
    )
except ImportError:  # development layout: extension on sys.path (e.g. PYTHONPATH=build)
    from _artfima import (
        codifference,
        fit_whittle,
        ljung_box,
        ma_coefficients,
        mcculloch_alpha,
        periodogram,
        residuals,
        run_cli,
        sample_sas,
        simulate,
        tempered_weights,
    )

__all__ = [
    "codifference",
    "fit_whittle",
    "ljung_box",
    "ma_coefficients",
    "mcculloch_alpha",
    "periodogram",
    "residuals",
    "run_cli",
    "sample_sas",
    "simulate",
    "tempered_weights",
]
