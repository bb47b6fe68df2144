"""Down-conversion source: pump parity to biphoton parity, plus spectra.

A classical pump prepared as a |e> + b |o> drives collinear degenerate
type-I down-conversion.  Parity is conserved pairwise, so the two-photon
parity tensor inherits the pump amplitudes:

    a |e>_p + b |o>_p  ->  a |Phi+> + b |Psi+>
    c_ee = c_oo = a / sqrt(2),   c_eo = c_oe = b / sqrt(2)

The joint spectrum is anti-correlated about the degenerate frequency: the
pair is (w_p/2 + W, w_p/2 - W) with amplitude f(W) set by the detection
filters, modeled Gaussian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NormalizationError, ShapeError
from .modes import ParityQubit

SPEED_OF_LIGHT = 299792458.0  # m/s

# Normalization slack for incoming states; constructed values sit at ~1e-16.
_NORM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class TwoPhotonParityState:
    """2x2 parity amplitude tensor c[q, r]; rows index the photon detected
    with frequency w_p/2 + W, columns its partner.  Index 0 = even, 1 = odd."""

    c: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.c, dtype=complex)
        if c.shape != (2, 2):
            raise ShapeError(f"parity tensor must be 2x2, got {c.shape}")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def total_weight(self) -> float:
        return float(np.sum(np.abs(self.c) ** 2))


def pump_to_biphoton(pump: ParityQubit) -> TwoPhotonParityState:
    """Map pump parity amplitudes onto the entangled pair tensor."""
    if abs(pump.norm() ** 2 - 1.0) > _NORM_TOL:
        raise NormalizationError(f"pump qubit norm^2 = {pump.norm()**2!r}, expected 1")
    a, b = complex(pump.alpha_e), complex(pump.alpha_o)
    c = np.array([[a, b], [b, a]], dtype=complex) / np.sqrt(2.0)
    return TwoPhotonParityState(c)


_BELL_TENSORS = {
    "phi+": np.array([[1.0, 0.0], [0.0, 1.0]]),
    "phi-": np.array([[1.0, 0.0], [0.0, -1.0]]),
    "psi+": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "psi-": np.array([[0.0, 1.0], [-1.0, 0.0]]),
}


def bell_state(label: str) -> TwoPhotonParityState:
    """One of the four parity Bell states: "phi+", "phi-", "psi+", "psi-"."""
    key = label.strip().lower()
    if key not in _BELL_TENSORS:
        raise DomainError(f"unknown Bell state label {label!r}")
    return TwoPhotonParityState(_BELL_TENSORS[key].astype(complex) / np.sqrt(2.0))


def concurrence(state: TwoPhotonParityState) -> float:
    """Concurrence of a pure two-qubit parity state, 2 |det c|.

    Equals 1 for the Bell states and 0 for products; invariant under local
    unitaries on either photon.
    """
    w = state.total_weight()
    if abs(w - 1.0) > _NORM_TOL:
        raise NormalizationError(f"state weight {w!r}, expected 1")
    value = 2.0 * abs(np.linalg.det(state.c))
    return float(min(1.0, value))


@dataclass(frozen=True)
class SpectralAmplitude:
    """Gaussian amplitude f(W) of the anti-correlated frequency offset W.

    f(W) = (pi sigma^2)^(-1/4) exp(-W^2 / (2 sigma^2)), so that the
    intensity integrates to one.  sigma is the RMS width of f itself, in
    rad/s; the degenerate carrier is w_p/2.
    """

    pump_wavelength_m: float
    sigma_omega: float

    def __post_init__(self) -> None:
        if not self.pump_wavelength_m > 0.0:
            raise DomainError(f"pump wavelength must be positive, got {self.pump_wavelength_m}")
        if not self.sigma_omega > 0.0:
            raise DomainError(f"spectral width must be positive, got {self.sigma_omega}")

    @property
    def omega_pump(self) -> float:
        """Pump angular frequency, rad/s."""
        return 2.0 * np.pi * SPEED_OF_LIGHT / self.pump_wavelength_m

    @property
    def omega_center(self) -> float:
        """Degenerate photon angular frequency w_p/2."""
        return 0.5 * self.omega_pump

    @property
    def pump_period_s(self) -> float:
        """Optical period of the pump, the fringe period in delay."""
        return self.pump_wavelength_m / SPEED_OF_LIGHT

    def amplitude(self, offset: np.ndarray) -> np.ndarray:
        w = np.asarray(offset, dtype=float)
        norm = (np.pi * self.sigma_omega ** 2) ** -0.25
        return norm * np.exp(-(w ** 2) / (2.0 * self.sigma_omega ** 2))


def make_spectrum(
    pump_wavelength_nm: float,
    filter_center_nm: float,
    filter_fwhm_nm: float,
) -> SpectralAmplitude:
    """Build the pair spectrum from pump wavelength and detection filters.

    The filter FWHM in wavelength converts to a frequency FWHM through
    dnu = c * dlambda / lambda^2 at the filter center, then to the Gaussian
    amplitude width sigma = 2 pi dnu / (2 sqrt(2 ln 2)).  The filter center
    must sit at the degenerate wavelength 2 * lambda_pump (1% slack).
    """
    if min(pump_wavelength_nm, filter_center_nm, filter_fwhm_nm) <= 0.0:
        raise DomainError("wavelengths and bandwidth must be positive")
    lam_p = pump_wavelength_nm * 1e-9
    lam_f = filter_center_nm * 1e-9
    dlam = filter_fwhm_nm * 1e-9
    if abs(lam_f - 2.0 * lam_p) > 0.01 * lam_f:
        raise DomainError(
            f"filter center {filter_center_nm} nm is not the degenerate wavelength "
            f"{2 * pump_wavelength_nm} nm"
        )
    dnu = SPEED_OF_LIGHT * dlam / lam_f ** 2
    fwhm_omega = 2.0 * np.pi * dnu
    sigma = fwhm_omega / (2.0 * np.sqrt(2.0 * np.log(2.0)))
    return SpectralAmplitude(pump_wavelength_m=lam_p, sigma_omega=sigma)
