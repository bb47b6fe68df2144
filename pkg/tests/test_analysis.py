"""Sweep fitting and the portable noise generator."""

import numpy as np
import pytest

from paritysim import (
    DegenerateFitError,
    DomainError,
    InsufficientDataError,
    fit_theta_sweep,
    fit_theta_values,
    lcg_noise,
    lcg_uniform,
    plateau_maxima,
    read_theta_csv,
    sin_squared_model,
)


def test_sin_squared_model_values():
    theta = np.array([0.0, np.pi / 2.0, np.pi])
    np.testing.assert_allclose(
        sin_squared_model(theta, 2.0, 0.5, 0.0, 0.25),
        [0.25, 2.0 * 0.5 + 0.25, 2.0 + 0.25],
        atol=1e-15,
    )


def test_fit_recovers_clean_parameters():
    theta = np.linspace(0.0, 10.0 * np.pi, 400)
    g2 = sin_squared_model(theta, 2.0, 0.5, 0.0, 0.0)
    fit = fit_theta_values(theta, g2)
    assert fit.amplitude == pytest.approx(2.0, abs=1e-9)
    assert fit.period == pytest.approx(2.0 * np.pi, abs=1e-9)
    assert fit.offset == pytest.approx(0.0, abs=1e-9)
    assert fit.residual_rms < 1e-10


def test_fit_survives_reproducible_noise():
    theta = np.linspace(0.0, 10.0 * np.pi, 500)
    g2 = sin_squared_model(theta, 2.0, 0.5, 0.1, 0.3) + lcg_noise(99, theta.size, 0.01)
    fit = fit_theta_values(theta, g2)
    assert fit.period == pytest.approx(2.0 * np.pi, rel=1e-3)
    assert fit.amplitude == pytest.approx(2.0, rel=1e-2)
    assert fit.offset == pytest.approx(0.3, abs=1e-2)


def test_fit_folds_negative_amplitude_into_a_shift():
    theta = np.linspace(0.0, 6.0 * np.pi, 300)
    g2 = 1.5 - sin_squared_model(theta, 1.5, 0.5, 0.0, 0.0)  # = 1.5 cos^2(theta/2)
    fit = fit_theta_values(theta, g2)
    assert fit.amplitude > 0.0
    recon = sin_squared_model(theta, fit.amplitude, np.pi / fit.period, fit.phase, fit.offset)
    np.testing.assert_allclose(recon, g2, atol=1e-8)


def test_fit_phase_is_wrapped_to_a_half_period():
    theta = np.linspace(0.0, 6.0 * np.pi, 300)
    g2 = sin_squared_model(theta, 1.0, 0.5, 2.9, 0.0)
    fit = fit_theta_values(theta, g2)
    assert -np.pi / 2.0 < fit.phase <= np.pi / 2.0
    recon = sin_squared_model(theta, fit.amplitude, np.pi / fit.period, fit.phase, fit.offset)
    np.testing.assert_allclose(recon, g2, atol=1e-8)


def test_fit_rejects_degenerate_input():
    theta = np.linspace(0.0, 1.0, 50)
    with pytest.raises(DegenerateFitError):
        fit_theta_values(theta, np.full(50, 0.7))
    with pytest.raises(InsufficientDataError):
        fit_theta_values(theta[:5], theta[:5])
    with pytest.raises(DomainError):
        fit_theta_values(theta, theta[:-1])


def test_read_theta_csv_round_trip(tmp_path):
    path = tmp_path / "sweep.csv"
    theta = np.linspace(0.0, np.pi, 12)
    g2 = 2.0 * np.sin(theta / 2.0) ** 2
    lines = ["theta_rad,g2_at_tau0"]
    lines += [f"{t:.17g},{v:.17g}" for t, v in zip(theta, g2)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    t_read, v_read = read_theta_csv(path)
    np.testing.assert_allclose(t_read, theta, atol=0)
    np.testing.assert_allclose(v_read, g2, atol=0)


def test_read_theta_csv_rejects_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("theta,g2\n0,0\n", encoding="utf-8")
    with pytest.raises(DomainError):
        read_theta_csv(path)


def test_fit_theta_sweep_from_file(tmp_path):
    path = tmp_path / "sweep.csv"
    theta = np.linspace(0.0, 10.0 * np.pi, 200)
    g2 = sin_squared_model(theta, 2.0, 0.5, 0.0, 0.0)
    lines = ["theta_rad,g2_at_tau0"]
    lines += [f"{t:.17g},{v:.17g}" for t, v in zip(theta, g2)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    fit = fit_theta_sweep(path)
    assert fit.period == pytest.approx(2.0 * np.pi, abs=1e-8)


def test_plateau_maxima_finds_simple_peaks():
    x = np.arange(7.0)
    y = np.array([0.0, 1.0, 0.0, 2.0, 0.0, 3.0, 0.0])
    np.testing.assert_allclose(plateau_maxima(x, y), [1.0, 3.0, 5.0], atol=0)


def test_plateau_maxima_merges_exact_ties():
    # a peak straddling two equal samples counts once, at the tie center
    x = np.arange(6.0)
    y = np.array([0.0, 1.0, 1.0, 0.0, 0.5, 0.0])
    np.testing.assert_allclose(plateau_maxima(x, y), [1.5, 4.0], atol=0)


def test_plateau_maxima_ignores_edges_and_shoulders():
    x = np.arange(5.0)
    assert plateau_maxima(x, np.array([3.0, 2.0, 1.0, 2.0, 3.0])).size == 0
    assert plateau_maxima(x, np.array([0.0, 1.0, 2.0, 3.0, 4.0])).size == 0
    with pytest.raises(DomainError):
        plateau_maxima(x, x[:-1])


def test_lcg_first_values_are_pinned():
    np.testing.assert_allclose(
        lcg_uniform(1, 3),
        [0.23645552527159452, 0.3692706737201661, 0.5042420323006809],
        rtol=0.0,
        atol=0.0,
    )


def test_lcg_is_deterministic_and_seed_sensitive():
    a = lcg_uniform(42, 100)
    b = lcg_uniform(42, 100)
    c = lcg_uniform(43, 100)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.all((a >= 0.0) & (a < 1.0))


def test_lcg_noise_is_bounded_and_centered():
    noise = lcg_noise(7, 4000, 0.25)
    assert np.all(np.abs(noise) <= 0.25)
    assert abs(np.mean(noise)) < 0.01


def test_lcg_rejects_negative_count():
    with pytest.raises(DomainError):
        lcg_uniform(1, -1)
