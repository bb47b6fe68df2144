"""Fitting helpers for sweep outputs and a portable noise generator."""

from __future__ import annotations

import csv
import warnings
from pathlib import Path
from typing import NamedTuple

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit

from .errors import DegenerateFitError, DomainError, InsufficientDataError

MIN_FIT_ROWS = 8

THETA_CSV_HEADER = "theta_rad,g2_at_tau0"


class FitResult(NamedTuple):
    """Parameters of amplitude * sin^2(k * theta + phase) + offset."""

    amplitude: float
    period: float  # pi / k, the period of sin^2 in theta
    phase: float
    offset: float
    residual_rms: float


def sin_squared_model(theta: np.ndarray, amplitude: float, k: float, phase: float, offset: float) -> np.ndarray:
    return amplitude * np.sin(k * np.asarray(theta) + phase) ** 2 + offset


def _initial_k(theta: np.ndarray, values: np.ndarray) -> float:
    # sin^2(k theta) oscillates at 2k rad^-1; estimate it from the FFT peak
    # of the detrended series (uniform spacing assumed, fine for a guess).
    y = values - np.mean(values)
    spectrum = np.abs(np.fft.rfft(y))
    if len(spectrum) < 2:
        return 0.5
    step = theta[1] - theta[0]
    freqs = np.fft.rfftfreq(len(y), d=step)  # cycles per theta unit
    peak = 1 + int(np.argmax(spectrum[1:]))
    return float(np.pi * freqs[peak]) if freqs[peak] > 0 else 0.5


def fit_theta_values(theta: np.ndarray, g2: np.ndarray) -> FitResult:
    """Least-squares fit of a sin^2 law to a plate-phase sweep.

    Raises InsufficientDataError below MIN_FIT_ROWS samples and
    DegenerateFitError for constant input or a non-converging solver.
    """
    theta = np.asarray(theta, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    if theta.shape != g2.shape:
        raise DomainError("theta and g2 arrays must have equal length")
    if theta.size < MIN_FIT_ROWS:
        raise InsufficientDataError(f"need at least {MIN_FIT_ROWS} rows, got {theta.size}")
    spread = float(np.ptp(g2))
    if spread <= 1e-14 * max(1.0, abs(float(np.mean(g2)))):
        raise DegenerateFitError("input is constant; no oscillation to fit")
    p0 = (spread, _initial_k(theta, g2), 0.0, float(np.min(g2)))
    try:
        with warnings.catch_warnings():
            # noiseless input makes the covariance singular; it is unused
            warnings.simplefilter("ignore", OptimizeWarning)
            popt, _ = curve_fit(
                sin_squared_model, theta, g2, p0=p0, maxfev=20000, xtol=1e-14, ftol=1e-14, gtol=1e-14
            )
    except RuntimeError as exc:
        raise DegenerateFitError(f"sin^2 fit did not converge: {exc}") from exc
    amplitude, k, phase, offset = (float(v) for v in popt)
    if amplitude < 0.0:  # sin^2(x + pi/2) flips the sign; fold it back
        amplitude, offset, phase = -amplitude, offset + amplitude, phase + np.pi / 2.0
    if k == 0.0:
        raise DegenerateFitError("fitted frequency is zero")
    residual = float(np.sqrt(np.mean((sin_squared_model(theta, amplitude, k, phase, offset) - g2) ** 2)))
    phase = float((phase + np.pi / 2.0) % np.pi - np.pi / 2.0)  # sin^2 has period pi in its argument
    return FitResult(amplitude, float(np.pi / abs(k)), phase, offset, residual)


def plateau_maxima(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Positions of the interior local maxima of sampled data.

    Adjacent equal samples are merged into one plateau, counted as a single
    maximum when it rises on its left edge and falls on its right; the
    reported position is the plateau center.  This keeps the count stable
    when a peak straddles two grid points whose values tie exactly.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DomainError("x and y arrays must have equal length")
    positions = []
    i = 1
    n = y.size
    while i < n - 1:
        if y[i] > y[i - 1]:
            j = i
            while j + 1 < n and y[j + 1] == y[j]:
                j += 1
            if j < n - 1 and y[j] > y[j + 1]:
                positions.append(0.5 * (x[i] + x[j]))
            i = j + 1
        else:
            i += 1
    return np.array(positions)


def read_theta_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read a theta-sweep CSV written by the command-line driver."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or ",".join(rows[0]) != THETA_CSV_HEADER:
        raise DomainError(f"expected header {THETA_CSV_HEADER!r} in {path}")
    body = [r for r in rows[1:] if r]
    theta = np.array([float(r[0]) for r in body])
    g2 = np.array([float(r[1]) for r in body])
    return theta, g2


def fit_theta_sweep(csv_path: str | Path) -> FitResult:
    """Fit the sin^2 law directly from a sweep CSV file."""
    theta, g2 = read_theta_csv(csv_path)
    return fit_theta_values(theta, g2)


def lcg_uniform(seed: int, n: int) -> np.ndarray:
    """Deterministic uniforms in [0, 1) from a 32-bit linear congruential
    generator, x_{k+1} = (1664525 x_k + 1013904223) mod 2^32, x_0 = seed.

    The constants are pinned here (not an implementation detail) so noisy
    test fixtures are reproducible across languages and library versions.
    """
    if n < 0:
        raise DomainError("sample count must be non-negative")
    out = np.empty(n, dtype=float)
    x = int(seed) % 2**32
    for i in range(n):
        x = (1664525 * x + 1013904223) % 2**32
        out[i] = x / 2**32
    return out


def lcg_noise(seed: int, n: int, amplitude: float) -> np.ndarray:
    """Zero-centered uniform noise in [-amplitude, +amplitude)."""
    return amplitude * (2.0 * lcg_uniform(seed, n) - 1.0)
