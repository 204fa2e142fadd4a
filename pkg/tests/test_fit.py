import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hubbardq.exceptions import FitInputError, ValidationError
from hubbardq.fitkit import (
    BandSeries,
    evaluate_fit,
    fit_band_extrapolation,
    read_band_csv,
    synthetic_series,
)

BANDS = np.arange(50, 601, 50)


@st.composite
def noisy_series(draw):
    e_inf = draw(st.floats(min_value=1.0, max_value=10.0))
    b = draw(st.floats(min_value=0.5, max_value=5.0)) * draw(st.sampled_from([-1.0, 1.0]))
    c = draw(st.floats(min_value=40.0, max_value=250.0))
    seed = draw(st.integers(min_value=0, max_value=2 ** 16))
    return synthetic_series(e_inf, b, c, BANDS, noise=1e-3, seed=seed)


def test_exact_recovery():
    fit = fit_band_extrapolation(synthetic_series(7.76, 2.0, 150.0, BANDS))
    assert fit.converged
    assert fit.delta_e_inf == pytest.approx(7.76, abs=1e-6)
    assert fit.b == pytest.approx(2.0, abs=1e-6)
    assert fit.c == pytest.approx(150.0, abs=1e-6)
    assert fit.residual_rms < 1e-8


def test_decreasing_series_recovery():
    fit = fit_band_extrapolation(synthetic_series(4.3, -1.2, 90.0, BANDS))
    assert (fit.delta_e_inf, fit.b, fit.c) == pytest.approx((4.3, -1.2, 90.0), abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(noisy_series(), st.floats(min_value=-5.0, max_value=5.0))
def test_shift_equivariance(series, shift):
    base = fit_band_extrapolation(series)
    moved = fit_band_extrapolation(BandSeries(series.n_band, series.delta_e + shift))
    assert moved.delta_e_inf == pytest.approx(base.delta_e_inf + shift, abs=1e-4)
    assert moved.b == pytest.approx(base.b, abs=1e-4)
    assert moved.c == pytest.approx(base.c, rel=1e-3)


@settings(max_examples=100, deadline=None)
@given(noisy_series(), st.floats(min_value=0.1, max_value=10.0))
def test_scale_equivariance(series, factor):
    base = fit_band_extrapolation(series)
    scaled = fit_band_extrapolation(BandSeries(series.n_band, series.delta_e * factor))
    assert scaled.delta_e_inf == pytest.approx(base.delta_e_inf * factor, rel=1e-4, abs=1e-4)
    assert scaled.b == pytest.approx(base.b * factor, rel=1e-4, abs=1e-4)
    assert scaled.c == pytest.approx(base.c, rel=1e-3)


def test_plateaued_series_gap():
    series = synthetic_series(4.5, 1.5, 60.0, np.arange(100, 1001, 100), noise=0.005, seed=3)
    fit = fit_band_extrapolation(series)
    assert abs(series.delta_e[-1] - fit.delta_e_inf) <= 0.05
    assert fit.delta_e_inf == pytest.approx(4.5, abs=0.05)


def test_constant_series():
    fit = fit_band_extrapolation(BandSeries(BANDS, np.full(len(BANDS), 5.2)))
    assert fit.b == 0.0
    assert fit.delta_e_inf == 5.2
    assert fit.converged


def test_too_few_points():
    with pytest.raises(FitInputError):
        BandSeries([10, 20, 30], [1.0, 2.0, 3.0])


def test_bands_must_increase():
    with pytest.raises(FitInputError):
        BandSeries([10, 20, 20, 30], [1.0, 2.0, 3.0, 4.0])
    with pytest.raises(FitInputError):
        BandSeries([10, 20, 30, 40], [1.0, np.nan, 3.0, 4.0])


def test_evaluate_fit():
    assert evaluate_fit((1.0, 2.0, 3.0), 3.0) == pytest.approx(1.0 + 2.0 * np.exp(-1.0))
    values = evaluate_fit((1.0, 2.0, 3.0), np.array([0.0, 3.0]))
    assert values == pytest.approx([3.0, 1.0 + 2.0 * np.exp(-1.0)])
    with pytest.raises(ValidationError):
        evaluate_fit((1.0, 2.0, 0.0), 1.0)


def test_read_csv_with_header(tmp_path):
    path = tmp_path / "bands.csv"
    rows = "\n".join(f"{n},{v:.10f}" for n, v in zip(BANDS, evaluate_fit((7.76, 2.0, 150.0), BANDS)))
    path.write_text("n_band,delta_e_ev\n" + rows + "\n")
    series = read_band_csv(path)
    assert series.label == "bands"
    assert len(series) == len(BANDS)
    assert fit_band_extrapolation(series).delta_e_inf == pytest.approx(7.76, abs=1e-6)


def test_read_csv_without_header(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("10,1.0\n20,2.0\n30,2.5\n40,2.7\n")
    assert read_band_csv(path, label="x").label == "x"


def test_read_csv_errors(tmp_path):
    wide = tmp_path / "wide.csv"
    wide.write_text("10,1.0,3\n20,2.0,3\n30,2.5,3\n40,2.7,3\n")
    with pytest.raises(FitInputError):
        read_band_csv(wide)
    broken = tmp_path / "broken.csv"
    broken.write_text("n,e\n10,1.0\n20,abc\n30,2.5\n40,2.7\n")
    with pytest.raises(FitInputError):
        read_band_csv(broken)
    with pytest.raises(FitInputError):
        read_band_csv(tmp_path / "missing.csv")
