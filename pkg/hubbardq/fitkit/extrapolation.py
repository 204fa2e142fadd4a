"""
Band-count extrapolation

    f(N_band) = dE_inf + b * exp(-N_band / c)

fitted by Levenberg-Marquardt with Marquardt diagonal scaling from three
starting points c in {span/10, span/3, span}; b and dE_inf of each start
interpolate the two endpoints exactly.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from hubbardq.exceptions import FitInputError, ValidationError
from hubbardq.observability import mainLogger

MIN_POINTS = 4
STEP_TOL = 1e-10
MAX_ITERATIONS = 1000
NU_INIT = 1e-3
NU_FACTOR = 10.0
NU_MAX = 1e16


@dataclass(frozen=True)
class BandSeries:
    """Excitation energies (eV) against band count; N_band strictly increasing"""
    n_band: np.ndarray
    delta_e: np.ndarray
    label: str = ""

    def __post_init__(self):
        n = np.asarray(self.n_band, dtype=float)
        y = np.asarray(self.delta_e, dtype=float)
        if n.ndim != 1 or n.shape != y.shape:
            raise FitInputError("n_band and delta_e must be 1-D of equal length")
        if len(n) < MIN_POINTS:
            raise FitInputError(f"a 3-parameter fit needs at least {MIN_POINTS} points, got {len(n)}")
        if not (np.all(np.isfinite(n)) and np.all(np.isfinite(y))):
            raise FitInputError("series contains non-finite values")
        if np.any(np.diff(n) <= 0):
            raise FitInputError("N_band must be strictly increasing")
        object.__setattr__(self, "n_band", n)
        object.__setattr__(self, "delta_e", y)

    def __len__(self) -> int:
        return len(self.n_band)


@dataclass(frozen=True)
class FitResult:
    delta_e_inf: float
    b: float
    c: float
    residual_rms: float
    converged: bool
    iterations: int = 0


def _model(theta: np.ndarray, n: np.ndarray) -> np.ndarray:
    e_inf, b, c = theta
    return e_inf + b * np.exp(-n / c)


def evaluate_fit(params: Union[FitResult, Sequence[float]], n: Union[float, np.ndarray]):
    """
    Value of the extrapolation formula at band count(s) n

    Raises:
        ValidationError: c <= 0
    """
    if isinstance(params, FitResult):
        theta = (params.delta_e_inf, params.b, params.c)
    else:
        theta = tuple(params)
    if theta[2] <= 0:
        raise ValidationError(f"c must be positive, got {theta[2]}")
    value = _model(np.asarray(theta, dtype=float), np.asarray(n, dtype=float))
    return float(value) if np.ndim(value) == 0 else value


def _jacobian(theta: np.ndarray, n: np.ndarray) -> np.ndarray:
    _, b, c = theta
    e = np.exp(-n / c)
    return np.column_stack([np.ones_like(n), e, b * e * n / c ** 2])


def _sse(theta: np.ndarray, n: np.ndarray, y: np.ndarray) -> float:
    r = _model(theta, n) - y
    return float(r @ r)


def _levenberg_marquardt(theta: np.ndarray, n: np.ndarray, y: np.ndarray,
                         scale: np.ndarray) -> Tuple[np.ndarray, bool, int]:
    nu = NU_INIT
    sse = _sse(theta, n, y)
    for iteration in range(1, MAX_ITERATIONS + 1):
        J = _jacobian(theta, n)
        r = _model(theta, n) - y
        JtJ = J.T @ J
        g = J.T @ r
        diag = np.maximum(np.diag(JtJ), 1e-300)

        while True:
            try:
                step = scipy.linalg.solve(JtJ + nu * np.diag(diag), -g, assume_a="sym")
            except (scipy.linalg.LinAlgError, ValueError):
                step = None
            if step is not None and np.all(np.isfinite(step)):
                trial = theta + step
                if trial[2] > 0:
                    trial_sse = _sse(trial, n, y)
                    if trial_sse <= sse:
                        break
            nu *= NU_FACTOR
            if nu > NU_MAX:
                # no descent direction left: stationary to working precision
                return theta, True, iteration

        theta, sse = trial, trial_sse
        nu = max(nu / NU_FACTOR, 1e-12)
        if np.max(np.abs(step) / (np.abs(theta) + scale)) < STEP_TOL:
            return theta, True, iteration
    return theta, False, MAX_ITERATIONS


def _starts(n: np.ndarray, y: np.ndarray):
    span = n[-1] - n[0]
    for c0 in (span / 10.0, span / 3.0, span):
        e_first, e_last = np.exp(-n[0] / c0), np.exp(-n[-1] / c0)
        b0 = (y[0] - y[-1]) / (e_first - e_last)
        theta0 = np.array([y[-1] - b0 * e_last, b0, c0])
        if np.all(np.isfinite(theta0)):
            yield theta0


def fit_band_extrapolation(series: BandSeries) -> FitResult:
    """
    Least-squares fit of the extrapolation formula

    A constant series returns b = 0 and dE_inf equal to that constant. When
    no start converges the best point found is returned with converged=False.
    """
    n, y = series.n_band, series.delta_e
    span = n[-1] - n[0]

    if np.all(y == y[0]):
        return FitResult(delta_e_inf=float(y[0]), b=0.0, c=float(span), residual_rms=0.0,
                         converged=True, iterations=0)

    y_span = float(np.ptp(y))
    scale = np.array([y_span, y_span, span]) * 1e-6

    best = None
    for theta0 in _starts(n, y):
        theta, converged, iterations = _levenberg_marquardt(theta0, n, y, scale)
        sse = _sse(theta, n, y)
        mainLogger.debug("Fit start finished", start=theta0.tolist(), result=theta.tolist(),
                         sse=sse, converged=converged, iterations=iterations)
        if best is None or sse < best[1]:
            best = (theta, sse, converged, iterations)

    if best is None:
        raise FitInputError("no usable starting point for this series")
    theta, sse, converged, iterations = best
    result = FitResult(
        delta_e_inf=float(theta[0]),
        b=float(theta[1]),
        c=float(theta[2]),
        residual_rms=float(np.sqrt(sse / len(n))),
        converged=converged,
        iterations=iterations,
    )
    mainLogger.info("Band extrapolation fitted", label=series.label, delta_e_inf=result.delta_e_inf,
                    b=result.b, c=result.c, residual_rms=result.residual_rms, converged=converged)
    return result


def _is_header(line: str) -> bool:
    try:
        [float(token) for token in line.split(",")]
    except ValueError:
        return True
    return False


def read_band_csv(path: Union[str, Path], label: Optional[str] = None) -> BandSeries:
    """
    Read ``n_band,delta_e_ev`` rows (an optional header line is skipped)

    Raises:
        FitInputError: Unreadable or malformed file
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            first = fh.readline()
    except OSError as e:
        raise FitInputError(f"cannot read {path}: {e}")
    skip = 1 if _is_header(first) else 0

    try:
        data = np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)
    except ValueError as e:
        raise FitInputError(f"malformed CSV {path}: {e}")
    if data.shape[1] != 2:
        raise FitInputError(f"expected 2 columns (n_band, delta_e_ev), got {data.shape[1]}")
    return BandSeries(n_band=data[:, 0], delta_e=data[:, 1], label=label or path.stem)


def synthetic_series(
    delta_e_inf: float,
    b: float,
    c: float,
    n_band: Sequence[float],
    noise: float = 0.0,
    seed: int = 42,
    label: str = "synthetic",
) -> BandSeries:
    """Series sampled from the formula with optional Gaussian noise (eV)"""
    n = np.asarray(n_band, dtype=float)
    y = evaluate_fit((delta_e_inf, b, c), n)
    if noise:
        y = y + np.random.default_rng(seed).normal(0.0, noise, size=n.shape)
    return BandSeries(n_band=n, delta_e=np.asarray(y, dtype=float), label=label)
