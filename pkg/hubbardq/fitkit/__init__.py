"""
Fitkit Module - Band-count extrapolation of excitation energies
"""

from .extrapolation import (
    BandSeries,
    FitResult,
    evaluate_fit,
    fit_band_extrapolation,
    read_band_csv,
    synthetic_series,
)

__all__ = [
    "BandSeries",
    "FitResult",
    "evaluate_fit",
    "fit_band_extrapolation",
    "read_band_csv",
    "synthetic_series",
]
