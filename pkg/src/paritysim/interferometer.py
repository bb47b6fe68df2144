"""Balanced Mach-Zehnder interferometry on the two-photon parity state.

Wiring (fixed): light enters one input port of a symmetric beamsplitter
(transmission 1/sqrt(2), reflection i/sqrt(2)); arm A carries a variable
delay tau; arm B carries the spatial flip when the parity-sensitive variant
is selected; a second identical beamsplitter recombines into output ports
c and d.  Parity eigenmodes pass the flip with eigenvalue +1 (even) or -1
(odd) and are untouched elsewhere, so the single-photon transfer to each
port depends only on frequency and parity:

    T_c(w, s) = (exp(-i w tau) - sigma) / 2
    T_d(w, s) = i (exp(-i w tau) + sigma) / 2

with sigma = s when the flip is present and sigma = +1 otherwise.  At
tau = 0 the flip variant routes even light entirely to port d and odd light
entirely to port c, which is what makes it a parity analyzer.

Both photons of the pair enter the same input port with anti-correlated
frequencies w_p/2 +- W.  The coincidence rate between the two output ports,
summed over the parities and frequencies nobody detects, is

    G2(tau) = sum_{q,r} int dW | (c_qr f(W) + c_rq f(-W))
                                 T_c(w_p/2 + W, q) T_d(w_p/2 - W, r) |^2

evaluated here by fixed-node Gauss-Legendre quadrature over |W| <= 5 sigma.
An analytic evaluation of the same integral for the Gaussian spectrum is
provided as an independent cross-check (g2_closed_form).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .elements import apply_pr
from .errors import (
    DegenerateBaselineError,
    DegenerateStateError,
    DomainError,
    NormalizationError,
    ResolutionWarning,
)
from .modes import Grid, ReferenceBasis, qubit_extract
from .source import SpectralAmplitude, TwoPhotonParityState, pump_to_biphoton

EVEN = +1
ODD = -1

DEFAULT_NODES = 129
# Quadrature window in units of sigma; the Gaussian intensity tail beyond
# 5 sigma of the amplitude is ~1.5e-12 and irrelevant at 1e-8 tolerances.
WINDOW_SIGMAS = 5.0
# Delay magnitude defining the fringe-free far region, in units of 1/sigma.
BASELINE_DELAY_SIGMAS = 10.0
_BASELINE_SAMPLES = 64
# Minimum samples per pump period before a sweep is flagged as under-resolved.
MIN_SAMPLES_PER_PERIOD = 8

_NORM_TOL = 1e-8


@dataclass(frozen=True)
class InterferometerConfig:
    """has_sf selects the parity-sensitive variant (flip in arm B)."""

    has_sf: bool = True


def traditional_mzi() -> InterferometerConfig:
    return InterferometerConfig(has_sf=False)


def ps_mzi() -> InterferometerConfig:
    return InterferometerConfig(has_sf=True)


def port_transfer(
    omega: float | np.ndarray,
    parity: int,
    tau: float,
    cfg: InterferometerConfig,
    port: str,
) -> complex | np.ndarray:
    """Single-photon amplitude from the input to an output port.

    parity is +1 (even) or -1 (odd); port "c" feeds the odd-side detector
    and port "d" the even-side one.  Vectorizes over omega.
    """
    if parity not in (EVEN, ODD):
        raise DomainError(f"parity must be +1 or -1, got {parity!r}")
    sigma = parity if cfg.has_sf else EVEN
    phase = np.exp(-1j * np.asarray(omega, dtype=float) * tau)
    if port == "c":
        out = (phase - sigma) / 2.0
    elif port == "d":
        out = 1j * (phase + sigma) / 2.0
    else:
        raise DomainError(f"port must be 'c' or 'd', got {port!r}")
    if np.ndim(omega) == 0:
        return complex(out)
    return out


def _legendre_nodes(sigma_omega: float, n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    if n_nodes < 2:
        raise DomainError(f"need at least 2 quadrature nodes, got {n_nodes}")
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    half = WINDOW_SIGMAS * sigma_omega
    return half * x, half * w


def _check_state(state: TwoPhotonParityState) -> None:
    if abs(state.total_weight() - 1.0) > _NORM_TOL:
        raise NormalizationError(f"state weight {state.total_weight()!r}, expected 1")


def _pair_amplitudes(
    state: TwoPhotonParityState, spectrum: SpectralAmplitude, n_nodes: int
) -> tuple[np.ndarray, np.ndarray, dict[tuple[int, int], np.ndarray]]:
    """Quadrature nodes, weights and the symmetrized spectral amplitudes
    B_qr(W) = c_qr f(W) + c_rq f(-W) for the four parity channels."""
    nodes, weights = _legendre_nodes(spectrum.sigma_omega, n_nodes)
    f_pos = spectrum.amplitude(nodes)
    f_neg = spectrum.amplitude(-nodes)
    c = state.c
    sym = {}
    for iq in (0, 1):
        for ir in (0, 1):
            sym[(iq, ir)] = c[iq, ir] * f_pos + c[ir, iq] * f_neg
    return nodes, weights, sym


def coincidence_profile(
    state: TwoPhotonParityState,
    spectrum: SpectralAmplitude,
    taus: np.ndarray,
    cfg: InterferometerConfig,
    n_nodes: int = DEFAULT_NODES,
) -> np.ndarray:
    """Coincidence rate G2 for an array of delays (vectorized quadrature).

    Sample points are independent of each other; they are evaluated as one
    batched array expression, so ordering of the output is the ordering of
    taus regardless of how the work is scheduled.
    """
    _check_state(state)
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    nodes, weights, sym = _pair_amplitudes(state, spectrum, n_nodes)
    wc = spectrum.omega_center
    phase_pos = np.exp(-1j * np.outer(taus, wc + nodes))  # photon at w_p/2 + W
    phase_neg = np.exp(-1j * np.outer(taus, wc - nodes))  # partner at w_p/2 - W
    total = np.zeros(taus.shape, dtype=float)
    for iq, q in ((0, EVEN), (1, ODD)):
        sq = q if cfg.has_sf else EVEN
        t_c = (phase_pos - sq) / 2.0
        for ir, r in ((0, EVEN), (1, ODD)):
            sr = r if cfg.has_sf else EVEN
            t_d = 1j * (phase_neg + sr) / 2.0
            amp = sym[(iq, ir)][None, :] * t_c * t_d
            total += (np.abs(amp) ** 2) @ weights
    return total


def coincidence_rate(
    state: TwoPhotonParityState,
    spectrum: SpectralAmplitude,
    tau: float,
    cfg: InterferometerConfig,
    n_nodes: int = DEFAULT_NODES,
) -> float:
    """G2 at a single delay; see coincidence_profile."""
    return float(coincidence_profile(state, spectrum, np.array([tau]), cfg, n_nodes)[0])


class OutcomeRates(NamedTuple):
    """Normalized rates of the four two-detector outcomes; they sum to 1."""

    cc: float
    cd: float
    dc: float
    dd: float


def outcome_probabilities(
    state: TwoPhotonParityState,
    spectrum: SpectralAmplitude,
    tau: float,
    cfg: InterferometerConfig,
    n_nodes: int = DEFAULT_NODES,
) -> OutcomeRates:
    """Probabilities of both photons at c, one at each port, or both at d.

    The four raw integrals sum to the squared norm of the symmetrized input
    amplitude (a tau-independent constant), so each is divided by that norm.
    States whose symmetrized amplitude vanishes identically (antisymmetric
    tensor with a symmetric spectrum) have no such normalization and raise
    DegenerateStateError.
    """
    _check_state(state)
    nodes, weights, sym = _pair_amplitudes(state, spectrum, n_nodes)
    wc = spectrum.omega_center
    phase_pos = np.exp(-1j * (wc + nodes) * tau)
    phase_neg = np.exp(-1j * (wc - nodes) * tau)
    total_weight = 0.0
    raw = {"cc": 0.0, "cd": 0.0, "dc": 0.0, "dd": 0.0}
    for iq, q in ((0, EVEN), (1, ODD)):
        sq = q if cfg.has_sf else EVEN
        for ir, r in ((0, EVEN), (1, ODD)):
            sr = r if cfg.has_sf else EVEN
            b = sym[(iq, ir)]
            total_weight += float((np.abs(b) ** 2) @ weights)
            t_c_pos = (phase_pos - sq) / 2.0
            t_d_pos = 1j * (phase_pos + sq) / 2.0
            t_c_neg = (phase_neg - sr) / 2.0
            t_d_neg = 1j * (phase_neg + sr) / 2.0
            raw["cc"] += float((np.abs(b * t_c_pos * t_c_neg) ** 2) @ weights)
            raw["cd"] += float((np.abs(b * t_c_pos * t_d_neg) ** 2) @ weights)
            raw["dc"] += float((np.abs(b * t_d_pos * t_c_neg) ** 2) @ weights)
            raw["dd"] += float((np.abs(b * t_d_pos * t_d_neg) ** 2) @ weights)
    if total_weight < 1e-12:
        raise DegenerateStateError(
            "symmetrized two-photon amplitude vanishes; outcome rates undefined"
        )
    return OutcomeRates(*(raw[k] / total_weight for k in ("cc", "cd", "dc", "dd")))


def g2_closed_form(
    state: TwoPhotonParityState,
    spectrum: SpectralAmplitude,
    taus: np.ndarray,
    cfg: InterferometerConfig,
) -> np.ndarray:
    """Analytic G2 for the Gaussian spectrum; cross-check for the quadrature.

    Valid because f is real and even in W, which collapses the symmetrized
    amplitude to (c_qr + c_rq) f(W).  With d = c + c^T,
    E1 = exp(-(sigma tau)^2 / 4) and E2 = exp(-(sigma tau)^2):

        G2 = 1/4 sum_{q,r} |d_qr|^2 [ 1 + (s_r - s_q) cos(w_p tau / 2) E1
                                        - s_q s_r (cos(w_p tau) + E2) / 2 ]
    """
    _check_state(state)
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    sig = spectrum.sigma_omega
    wp = spectrum.omega_pump
    e1 = np.exp(-((sig * taus) ** 2) / 4.0)
    e2 = np.exp(-((sig * taus) ** 2))
    cos_full = np.cos(wp * taus)
    cos_half = np.cos(0.5 * wp * taus)
    d = state.c + state.c.T
    total = np.zeros(taus.shape, dtype=float)
    for iq, q in ((0, EVEN), (1, ODD)):
        sq = q if cfg.has_sf else EVEN
        for ir, r in ((0, EVEN), (1, ODD)):
            sr = r if cfg.has_sf else EVEN
            weight = 0.25 * abs(d[iq, ir]) ** 2
            total += weight * (1.0 + (sr - sq) * cos_half * e1 - sq * sr * (cos_full + e2) / 2.0)
    return total


@dataclass(frozen=True, eq=False)
class Interferogram:
    """One delay sweep: raw and baseline-normalized G2 plus context."""

    tau_s: np.ndarray
    g2: np.ndarray  # g2_raw / baseline
    g2_raw: np.ndarray
    baseline: float
    config: InterferometerConfig
    pump_period_s: float
    sigma_omega: float
    plate_theta: float | None = None
    notes: tuple[str, ...] = ()


def interferogram_sweep(
    state: TwoPhotonParityState,
    spectrum: SpectralAmplitude,
    tau_min: float,
    tau_max: float,
    n_steps: int,
    cfg: InterferometerConfig,
    *,
    plate_theta: float | None = None,
    n_nodes: int = DEFAULT_NODES,
) -> Interferogram:
    """Sweep the delay and normalize to the fringe-free far baseline.

    The baseline is the mean of G2 over one full pump period ending at
    tau = 10 / sigma, where the envelope has died off; it is evaluated on
    its own fine subgrid, independent of the requested sweep.  A step
    coarser than an eighth of the pump period cannot resolve the fringe, so
    the result is then tagged with a ResolutionWarning.
    """
    if not (np.isfinite(tau_min) and np.isfinite(tau_max)) or tau_min >= tau_max:
        raise DomainError(f"need tau_min < tau_max, got [{tau_min}, {tau_max}]")
    if n_steps < 2:
        raise DomainError(f"need at least 2 sweep samples, got {n_steps}")
    taus = np.linspace(tau_min, tau_max, n_steps)
    period = spectrum.pump_period_s
    notes: tuple[str, ...] = ()
    step = (tau_max - tau_min) / (n_steps - 1)
    if step > period / MIN_SAMPLES_PER_PERIOD:
        msg = (
            f"delay step {step:.3e} s exceeds {period / MIN_SAMPLES_PER_PERIOD:.3e} s "
            f"({MIN_SAMPLES_PER_PERIOD} samples per pump period); fringes will alias"
        )
        warnings.warn(msg, ResolutionWarning, stacklevel=2)
        notes = (msg,)
    g2_raw = coincidence_profile(state, spectrum, taus, cfg, n_nodes)
    tau_far = BASELINE_DELAY_SIGMAS / spectrum.sigma_omega
    sub = tau_far - period + (np.arange(_BASELINE_SAMPLES) + 0.5) * period / _BASELINE_SAMPLES
    baseline = float(np.mean(coincidence_profile(state, spectrum, sub, cfg, n_nodes)))
    if baseline > 0.0:
        g2_norm = g2_raw / baseline
    else:
        g2_norm = np.full_like(g2_raw, np.nan)
        notes = notes + ("baseline is zero; normalized values undefined",)
    return Interferogram(
        tau_s=taus,
        g2=g2_norm,
        g2_raw=g2_raw,
        baseline=baseline,
        config=cfg,
        pump_period_s=period,
        sigma_omega=spectrum.sigma_omega,
        plate_theta=plate_theta,
        notes=notes,
    )


class VisibilityResult(NamedTuple):
    visibility: float
    fringe_period_s: float
    kind: str  # "dip" or "peak"


def _refined_peaks(taus: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Strict local maxima with 3-point parabolic position refinement."""
    step = taus[1] - taus[0]
    peaks = []
    for i in range(1, len(values) - 1):
        if values[i] > values[i - 1] and values[i] > values[i + 1]:
            denom = values[i - 1] - 2.0 * values[i] + values[i + 1]
            delta = 0.5 * (values[i - 1] - values[i + 1]) / denom if denom != 0.0 else 0.0
            peaks.append(taus[i] + delta * step)
    return np.array(peaks)


def visibility(ig: Interferogram, *, fringe_window_periods: float = 20.0) -> VisibilityResult:
    """Central-extremum visibility and measured fringe period.

    Visibility is |baseline - extremum| / baseline with the extremum taken
    near tau = 0 (a minimum for a dip, a maximum for a peak).  The fringe
    period is the mean peak-to-peak spacing of the raw oscillation within
    fringe_window_periods pump periods of zero; NaN when fewer than three
    maxima are available.
    """
    if ig.baseline == 0.0:
        raise DegenerateBaselineError("baseline is zero")
    taus, raw = ig.tau_s, ig.g2_raw
    if taus[0] > 0.0 or taus[-1] < 0.0:
        raise DomainError("interferogram does not cover tau = 0")
    period = ig.pump_period_s
    center = np.abs(taus) <= 1.5 * period
    if not np.any(center):
        center = np.zeros_like(taus, dtype=bool)
        center[np.argmin(np.abs(taus))] = True
    g0 = raw[np.argmin(np.abs(taus))]
    if g0 < ig.baseline:
        kind, extremum = "dip", float(np.min(raw[center]))
    else:
        kind, extremum = "peak", float(np.max(raw[center]))
    vis = abs(ig.baseline - extremum) / ig.baseline

    half_span = min(abs(taus[0]), abs(taus[-1]))
    window = np.abs(taus) <= min(fringe_window_periods * period, half_span)
    peaks = _refined_peaks(taus[window], raw[window])
    if len(peaks) >= 3:
        fringe = float(np.mean(np.diff(peaks)))
    else:
        fringe = float("nan")
    return VisibilityResult(float(vis), fringe, kind)


def fringe_phase(ig: Interferogram, *, window_periods: float = 3.0) -> float:
    """Phase phi of the fringe F cos(w_p tau + phi) near tau = 0.

    Linear least squares on [1, cos(w_p tau), sin(w_p tau)]; the slowly
    varying envelope is even in tau and lands in the constant and cosine
    coefficients, leaving the phase unbiased.
    """
    omega_p = 2.0 * np.pi / ig.pump_period_s
    window = np.abs(ig.tau_s) <= window_periods * ig.pump_period_s
    if np.count_nonzero(window) < 8:
        raise DomainError("too few samples near tau = 0 for a fringe-phase fit")
    t = ig.tau_s[window]
    y = ig.g2_raw[window]
    design = np.stack([np.ones_like(t), np.cos(omega_p * t), np.sin(omega_p * t)], axis=1)
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(np.arctan2(-coeffs[2], coeffs[1]))


def theta_sweep(
    spectrum: SpectralAmplitude,
    theta_min: float,
    theta_max: float,
    n_steps: int,
    cfg: InterferometerConfig,
    *,
    basis: ReferenceBasis | None = None,
    n_nodes: int = DEFAULT_NODES,
) -> tuple[np.ndarray, np.ndarray]:
    """Zero-delay coincidence versus pump plate phase.

    Every point runs the full chain: rotate the even reference mode with a
    half-plane plate of phase theta, extract the pump qubit, build the
    biphoton state, and integrate G2 at tau = 0.  Returns (thetas, g2).
    """
    if not theta_min < theta_max:
        raise DomainError(f"need theta_min < theta_max, got [{theta_min}, {theta_max}]")
    if n_steps < 2:
        raise DomainError(f"need at least 2 sweep samples, got {n_steps}")
    if basis is None:
        basis = ReferenceBasis.gaussian(Grid())
    thetas = np.linspace(theta_min, theta_max, n_steps)
    g2 = np.empty(n_steps, dtype=float)
    for i, theta in enumerate(thetas):
        pump = qubit_extract(apply_pr(basis.g, float(theta)), basis)
        state = pump_to_biphoton(pump)
        g2[i] = coincidence_rate(state, spectrum, 0.0, cfg, n_nodes)
    return thetas, g2
