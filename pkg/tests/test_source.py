"""Biphoton source map, concurrence, and the detection spectrum."""

import numpy as np
import pytest

from paritysim import (
    DomainError,
    NormalizationError,
    ParityQubit,
    SPEED_OF_LIGHT,
    ShapeError,
    TwoPhotonParityState,
    bell_state,
    concurrence,
    make_spectrum,
    pump_to_biphoton,
    qubit,
)


def test_even_pump_yields_correlated_pairs():
    state = pump_to_biphoton(qubit(1.0, 0.0))
    np.testing.assert_allclose(state.c, np.eye(2) / np.sqrt(2.0), atol=0)


def test_odd_pump_yields_anticorrelated_pairs():
    state = pump_to_biphoton(qubit(0.0, 1.0))
    np.testing.assert_allclose(state.c, np.array([[0, 1], [1, 0]]) / np.sqrt(2.0), atol=0)


def test_pump_amplitudes_propagate_linearly():
    a, b = 0.6, 0.8j
    state = pump_to_biphoton(ParityQubit(a, b))
    np.testing.assert_allclose(
        state.c, np.array([[a, b], [b, a]]) / np.sqrt(2.0), atol=1e-15
    )
    assert state.total_weight() == pytest.approx(1.0, abs=1e-12)


def test_pump_must_be_normalized():
    with pytest.raises(NormalizationError):
        pump_to_biphoton(ParityQubit(2.0, 0.0))


def test_state_tensor_must_be_2x2():
    with pytest.raises(ShapeError):
        TwoPhotonParityState(np.ones((2, 3)))


def test_bell_states_have_unit_concurrence():
    for label in ("phi+", "phi-", "psi+", "psi-"):
        state = bell_state(label)
        assert state.total_weight() == pytest.approx(1.0, abs=1e-15)
        assert concurrence(state) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DomainError):
        bell_state("omega+")


def test_concurrence_laws_of_the_two_pump_families():
    thetas = np.linspace(0.0, 2.0 * np.pi, 100)
    for t in thetas:
        c_i = concurrence(pump_to_biphoton(qubit(np.cos(t), 1j * np.sin(t))))
        assert c_i == pytest.approx(1.0, abs=1e-12)
        c_r = concurrence(pump_to_biphoton(qubit(np.cos(t), np.sin(t))))
        assert c_r == pytest.approx(abs(np.cos(2.0 * t)), abs=1e-12)


def test_real_family_is_separable_at_quarter_pi():
    state = pump_to_biphoton(qubit(np.cos(np.pi / 4.0), np.sin(np.pi / 4.0)))
    assert concurrence(state) == pytest.approx(0.0, abs=1e-12)


def test_concurrence_requires_unit_weight():
    with pytest.raises(NormalizationError):
        concurrence(TwoPhotonParityState(np.eye(2)))


def test_concurrence_matches_reduced_density_matrix_purity():
    # independent oracle: for a pure two-qubit state with coefficient tensor
    # c, the reduced density matrix of one photon is rho = c c^dagger and
    # C = sqrt(2 (1 - Tr rho^2)).
    rng = np.random.default_rng(21)
    for _ in range(50):
        pump = qubit(complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
        state = pump_to_biphoton(pump)
        rho = state.c @ state.c.conj().T
        purity = float(np.trace(rho @ rho).real)
        oracle = np.sqrt(max(0.0, 2.0 * (1.0 - purity)))
        assert concurrence(state) == pytest.approx(oracle, abs=1e-10)


def test_spectrum_frequency_relations():
    spec = make_spectrum(405.0, 810.0, 10.0)
    assert spec.pump_wavelength_m == pytest.approx(405e-9)
    assert spec.omega_pump == pytest.approx(2.0 * np.pi * SPEED_OF_LIGHT / 405e-9, rel=1e-15)
    assert spec.omega_center == pytest.approx(spec.omega_pump / 2.0, rel=1e-15)
    assert spec.pump_period_s == pytest.approx(405e-9 / SPEED_OF_LIGHT, rel=1e-15)


def test_spectrum_width_from_filter_bandwidth():
    # Delta nu = c Delta lambda / lambda^2, sigma = 2 pi Delta nu / (2 sqrt(2 ln 2))
    spec = make_spectrum(405.0, 810.0, 10.0)
    dnu = SPEED_OF_LIGHT * 10e-9 / 810e-9**2
    expected = 2.0 * np.pi * dnu / (2.0 * np.sqrt(2.0 * np.log(2.0)))
    assert spec.sigma_omega == pytest.approx(expected, rel=1e-14)
    assert spec.sigma_omega == pytest.approx(12191939797760.283, rel=1e-12)
    assert spec.pump_period_s == pytest.approx(1.3509345855525158e-15, rel=1e-12)


def test_spectral_amplitude_intensity_is_normalized():
    spec = make_spectrum(405.0, 810.0, 10.0)
    w = np.linspace(-8.0, 8.0, 4001) * spec.sigma_omega
    intensity = spec.amplitude(w) ** 2
    assert np.trapezoid(intensity, w) == pytest.approx(1.0, rel=1e-9)


def test_spectral_amplitude_is_even():
    spec = make_spectrum(405.0, 810.0, 10.0)
    w = np.linspace(0.1, 4.0, 7) * spec.sigma_omega
    np.testing.assert_allclose(spec.amplitude(w), spec.amplitude(-w), atol=0)


def test_make_spectrum_validation():
    with pytest.raises(DomainError):
        make_spectrum(-405.0, 810.0, 10.0)
    with pytest.raises(DomainError):
        make_spectrum(405.0, 810.0, 0.0)
    with pytest.raises(DomainError):
        make_spectrum(405.0, 790.0, 10.0)  # filter far from degeneracy
